#pragma once

#include "nwb/gauge/field.hpp"

#include <array>
#include <vector>

// Steepest descent for the Yang-Mills action on link angles. Abelian only:
// away from the branch cut the clover action is an exact quadratic in the
// angles, so the force below is the analytic gradient.

namespace nwb::gauge {

// d(ym_action)/d(phi_mu(site)) for the link angles phi = arg(link)
std::array<std::vector<double>, 4> ym_force(const GaugeField& u);

struct FlowResult {
  GaugeField field;
  // action before the first step, then after each accepted step; never
  // increasing
  std::vector<double> action_trace;
};

// Descent with backtracking: each iteration tries the given step and halves it
// until the action does not increase. A first iteration that cannot decrease
// the action even after backtracking is rejected with a diagnostic; later
// iterations that stall end the flow early (stationary point reached).
FlowResult ym_gradient_flow(const GaugeField& u0, double step, int iters);

} // namespace nwb::gauge
