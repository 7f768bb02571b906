#pragma once

#include <complex>
#include <cstddef>

// Complex double vector primitives used in the inner loops of the block
// eigensolver and the frame algebra. Each entry point dispatches to the
// active lane (see dispatch.hpp).
//
// Lane equivalence: the elementwise kernels (axpy, scal) perform the exact
// same multiply/add sequence per element in both lanes and agree bit for
// bit (the build disables FMA contraction). The reductions (dotc, nrm2sq)
// accumulate in a different order in the AVX2 lane and agree only up to
// roundoff; tests bound the relative difference.

namespace nwb::kernels {

using cdbl = std::complex<double>;

// y[i] += a * x[i]
void axpy(cdbl a, const cdbl* x, cdbl* y, std::size_t n);

// x[i] *= a
void scal(cdbl a, cdbl* x, std::size_t n);

// sum_i conj(x[i]) * y[i]
cdbl dotc(const cdbl* x, const cdbl* y, std::size_t n);

// sum_i |x[i]|^2
double nrm2sq(const cdbl* x, std::size_t n);

namespace detail {
void axpy_scalar(cdbl a, const cdbl* x, cdbl* y, std::size_t n);
void scal_scalar(cdbl a, cdbl* x, std::size_t n);
cdbl dotc_scalar(const cdbl* x, const cdbl* y, std::size_t n);
double nrm2sq_scalar(const cdbl* x, std::size_t n);

void axpy_avx2(cdbl a, const cdbl* x, cdbl* y, std::size_t n);
void scal_avx2(cdbl a, cdbl* x, std::size_t n);
cdbl dotc_avx2(const cdbl* x, const cdbl* y, std::size_t n);
double nrm2sq_avx2(const cdbl* x, std::size_t n);
} // namespace detail

} // namespace nwb::kernels
