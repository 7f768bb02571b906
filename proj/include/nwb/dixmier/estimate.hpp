#pragma once

#include "nwb/dixmier/spectral_measure.hpp"

#include <utility>
#include <vector>

// Windowed Dixmier-trace estimation: samples delta_r / log(1+r) on a window
// of ranks, extrapolates the limit with a least-squares fit against
// 1/log(1+r), and reports the residual oscillation instead of pretending the
// limit functional is computable. A measure whose window ratios do not settle
// onto the 1/log model comes back with converged = false.

namespace nwb::dixmier {

struct DixmierEstimate {
  double value = 0.0;              // alias of extrapolated_limit
  double extrapolated_limit = 0.0; // intercept of the fit at 1/log(1+r) -> 0
  double slope = 0.0;              // coefficient of the 1/log(1+r) term
  double oscillation = 0.0;        // max - min of fit residuals on the window
  bool converged = false;          // oscillation <= tolerance
  std::vector<std::pair<double, double>> window_values; // (r, delta_r/log(1+r))
};

// Geometrically spaced window of ranks in [r_min, r_max].
std::vector<double> log_window(double r_min, double r_max, int points);

// Window must be strictly increasing with at least 3 points, all > 0 and
// within the measure's trusted range (std::invalid_argument otherwise).
DixmierEstimate dixmier_estimate(const SpectralMeasure& a,
                                 const std::vector<double>& window,
                                 double osc_tol = 1e-2);

// Same fit applied to externally computed (rank, partial sum) pairs, for
// estimators that compress an operator to mode balls instead of knowing its
// eigenvalues. Ranks must be strictly increasing and positive.
DixmierEstimate estimate_from_pairs(const std::vector<std::pair<double, double>>& rank_and_sum,
                                    double osc_tol = 1e-2);

// Difference of estimates for the positive and negative parts of a
// self-adjoint operator's spectrum.
struct SignedDixmier {
  double value = 0.0;
  DixmierEstimate plus, minus;
  bool converged = false;
};

SignedDixmier signed_dixmier(const SpectralMeasure& plus_part,
                             const SpectralMeasure& minus_part,
                             const std::vector<double>& window,
                             double osc_tol = 1e-2);

} // namespace nwb::dixmier
