#include "nwb/kernels/dispatch.hpp"

namespace nwb::kernels {

Lane detect_best_lane() {
#if defined(__x86_64__) || defined(__i386__)
  if (__builtin_cpu_supports("avx2")) return Lane::avx2;
#endif
  return Lane::scalar;
}

namespace {
Lane& lane_slot() {
  static Lane l = detect_best_lane();
  return l;
}
} // namespace

Lane active_lane() { return lane_slot(); }
void set_lane(Lane l) { lane_slot() = l; }

bool avx2_available() { return detect_best_lane() == Lane::avx2; }

const char* lane_name(Lane l) {
  return l == Lane::avx2 ? "avx2" : "scalar";
}

} // namespace nwb::kernels
