#include "nwb/kernels/cvec.hpp"

// Reference lane. Plain sequential loops; the wide lane must reproduce the
// per-element arithmetic of these exactly.

namespace nwb::kernels::detail {

void axpy_scalar(cdbl a, const cdbl* x, cdbl* y, std::size_t n) {
  const double ar = a.real(), ai = a.imag();
  for (std::size_t i = 0; i < n; ++i) {
    const double xr = x[i].real(), xi = x[i].imag();
    y[i] = cdbl(y[i].real() + (ar * xr - ai * xi),
                y[i].imag() + (ar * xi + ai * xr));
  }
}

void scal_scalar(cdbl a, cdbl* x, std::size_t n) {
  const double ar = a.real(), ai = a.imag();
  for (std::size_t i = 0; i < n; ++i) {
    const double xr = x[i].real(), xi = x[i].imag();
    x[i] = cdbl(ar * xr - ai * xi, ar * xi + ai * xr);
  }
}

cdbl dotc_scalar(const cdbl* x, const cdbl* y, std::size_t n) {
  double re = 0.0, im = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double xr = x[i].real(), xi = x[i].imag();
    const double yr = y[i].real(), yi = y[i].imag();
    re += xr * yr + xi * yi;
    im += xr * yi - xi * yr;
  }
  return {re, im};
}

double nrm2sq_scalar(const cdbl* x, std::size_t n) {
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i)
    s += x[i].real() * x[i].real() + x[i].imag() * x[i].imag();
  return s;
}

} // namespace nwb::kernels::detail
