#include "nwb/kernels/cvec.hpp"

#include "nwb/kernels/dispatch.hpp"

namespace nwb::kernels {

void axpy(cdbl a, const cdbl* x, cdbl* y, std::size_t n) {
  if (active_lane() == Lane::avx2)
    detail::axpy_avx2(a, x, y, n);
  else
    detail::axpy_scalar(a, x, y, n);
}

void scal(cdbl a, cdbl* x, std::size_t n) {
  if (active_lane() == Lane::avx2)
    detail::scal_avx2(a, x, n);
  else
    detail::scal_scalar(a, x, n);
}

cdbl dotc(const cdbl* x, const cdbl* y, std::size_t n) {
  return active_lane() == Lane::avx2 ? detail::dotc_avx2(x, y, n)
                                     : detail::dotc_scalar(x, y, n);
}

double nrm2sq(const cdbl* x, std::size_t n) {
  return active_lane() == Lane::avx2 ? detail::nrm2sq_avx2(x, n)
                                     : detail::nrm2sq_scalar(x, n);
}

} // namespace nwb::kernels
