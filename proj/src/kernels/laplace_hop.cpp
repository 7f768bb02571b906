#include "nwb/kernels/laplace_hop.hpp"

#include "nwb/kernels/dispatch.hpp"

namespace nwb::kernels {

void laplace_hop_apply(const HopTables& t, double c, const cdbl* in,
                       cdbl* out) {
  if (active_lane() == Lane::avx2)
    detail::laplace_hop_avx2(t, c, in, out);
  else
    detail::laplace_hop_scalar(t, c, in, out);
}

} // namespace nwb::kernels
