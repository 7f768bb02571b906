#include "nwb/kernels/wilson_hop.hpp"

#include "nwb/kernels/dispatch.hpp"

namespace nwb::kernels {

void wilson_hop_apply(const HopTables& t, double rw, bool dagger,
                      const cdbl* in, cdbl* out) {
  if (active_lane() == Lane::avx2)
    detail::wilson_hop_avx2(t, rw, dagger, in, out);
  else
    detail::wilson_hop_scalar(t, rw, dagger, in, out);
}

} // namespace nwb::kernels
