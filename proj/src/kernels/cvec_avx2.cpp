#include "nwb/kernels/cvec.hpp"

// AVX2 lane: one 256-bit register holds two interleaved complex doubles.
// Complex products are issued as mul/mul/addsub, which performs the same
// (ar*xr - ai*xi, ar*xi + ai*xr) roundings as the scalar lane, so the
// elementwise kernels match it bitwise. Reductions keep four partial sums
// and collapse them at the end, so they are tested with a tolerance.

#if defined(__AVX2__)
#include <immintrin.h>
#endif

namespace nwb::kernels::detail {

#if defined(__AVX2__)

namespace {

inline __m256d cmul_by_scalar(__m256d v, __m256d ar, __m256d ai) {
  // (ar + i ai) * v for both complex slots of v
  const __m256d t1 = _mm256_mul_pd(v, ar);
  const __m256d t2 = _mm256_mul_pd(_mm256_permute_pd(v, 0x5), ai);
  return _mm256_addsub_pd(t1, t2);
}

inline double hsum4(__m256d v) {
  alignas(32) double b[4];
  _mm256_store_pd(b, v);
  return ((b[0] + b[1]) + b[2]) + b[3];
}

} // namespace

void axpy_avx2(cdbl a, const cdbl* x, cdbl* y, std::size_t n) {
  const __m256d ar = _mm256_set1_pd(a.real());
  const __m256d ai = _mm256_set1_pd(a.imag());
  std::size_t i = 0;
  const double* xp = reinterpret_cast<const double*>(x);
  double* yp = reinterpret_cast<double*>(y);
  for (; i + 2 <= n; i += 2) {
    const __m256d xv = _mm256_loadu_pd(xp + 2 * i);
    const __m256d yv = _mm256_loadu_pd(yp + 2 * i);
    _mm256_storeu_pd(yp + 2 * i, _mm256_add_pd(yv, cmul_by_scalar(xv, ar, ai)));
  }
  if (i < n) {
    const double xr = x[i].real(), xi = x[i].imag();
    y[i] = cdbl(y[i].real() + (a.real() * xr - a.imag() * xi),
                y[i].imag() + (a.real() * xi + a.imag() * xr));
  }
}

void scal_avx2(cdbl a, cdbl* x, std::size_t n) {
  const __m256d ar = _mm256_set1_pd(a.real());
  const __m256d ai = _mm256_set1_pd(a.imag());
  std::size_t i = 0;
  double* xp = reinterpret_cast<double*>(x);
  for (; i + 2 <= n; i += 2) {
    const __m256d xv = _mm256_loadu_pd(xp + 2 * i);
    _mm256_storeu_pd(xp + 2 * i, cmul_by_scalar(xv, ar, ai));
  }
  if (i < n) {
    const double xr = x[i].real(), xi = x[i].imag();
    x[i] = cdbl(a.real() * xr - a.imag() * xi, a.real() * xi + a.imag() * xr);
  }
}

cdbl dotc_avx2(const cdbl* x, const cdbl* y, std::size_t n) {
  // sign mask flipping the even (real-slot) lanes
  const __m256d neg_even = _mm256_castsi256_pd(
      _mm256_set_epi64x(0, 0x8000000000000000LL, 0, 0x8000000000000000LL));
  __m256d re_acc = _mm256_setzero_pd();
  __m256d im_acc = _mm256_setzero_pd();
  std::size_t i = 0;
  const double* xp = reinterpret_cast<const double*>(x);
  const double* yp = reinterpret_cast<const double*>(y);
  for (; i + 2 <= n; i += 2) {
    const __m256d xv = _mm256_loadu_pd(xp + 2 * i);
    const __m256d yv = _mm256_loadu_pd(yp + 2 * i);
    re_acc = _mm256_add_pd(re_acc, _mm256_mul_pd(xv, yv));
    const __m256d xs = _mm256_permute_pd(xv, 0x5);
    im_acc = _mm256_add_pd(im_acc,
                           _mm256_xor_pd(_mm256_mul_pd(xs, yv), neg_even));
  }
  double re = hsum4(re_acc), im = hsum4(im_acc);
  for (; i < n; ++i) {
    const double xr = x[i].real(), xi = x[i].imag();
    const double yr = y[i].real(), yi = y[i].imag();
    re += xr * yr + xi * yi;
    im += xr * yi - xi * yr;
  }
  return {re, im};
}

double nrm2sq_avx2(const cdbl* x, std::size_t n) {
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  const double* xp = reinterpret_cast<const double*>(x);
  for (; i + 2 <= n; i += 2) {
    const __m256d xv = _mm256_loadu_pd(xp + 2 * i);
    acc = _mm256_add_pd(acc, _mm256_mul_pd(xv, xv));
  }
  double s = hsum4(acc);
  for (; i < n; ++i)
    s += x[i].real() * x[i].real() + x[i].imag() * x[i].imag();
  return s;
}

#else // !__AVX2__ : build without the wide lane, forward to the reference

void axpy_avx2(cdbl a, const cdbl* x, cdbl* y, std::size_t n) {
  axpy_scalar(a, x, y, n);
}
void scal_avx2(cdbl a, cdbl* x, std::size_t n) { scal_scalar(a, x, n); }
cdbl dotc_avx2(const cdbl* x, const cdbl* y, std::size_t n) {
  return dotc_scalar(x, y, n);
}
double nrm2sq_avx2(const cdbl* x, std::size_t n) { return nrm2sq_scalar(x, n); }

#endif

} // namespace nwb::kernels::detail
