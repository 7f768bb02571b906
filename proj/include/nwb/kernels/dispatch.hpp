#pragma once

// Runtime selection between the scalar reference kernels and the AVX2
// variants. Detection happens once at startup; tests may pin a lane to
// compare the two implementations on identical inputs.

namespace nwb::kernels {

enum class Lane { scalar, avx2 };

// Best lane the executing CPU supports.
Lane detect_best_lane();

// Lane used by the dispatched entry points (defaults to detect_best_lane()).
Lane active_lane();
void set_lane(Lane l);

// True when this build carries AVX2 code paths and the CPU reports avx2.
bool avx2_available();

const char* lane_name(Lane l);

} // namespace nwb::kernels
