#include "nwb/dixmier/estimate.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace nwb::dixmier {

std::vector<double> log_window(double r_min, double r_max, int points) {
  if (!(r_min > 0.0) || !(r_max > r_min))
    throw std::invalid_argument("log_window: need 0 < r_min < r_max");
  if (points < 3) throw std::invalid_argument("log_window: need at least 3 points");
  std::vector<double> w(static_cast<std::size_t>(points));
  const double lr0 = std::log(r_min), lr1 = std::log(r_max);
  for (int i = 0; i < points; ++i)
    w[static_cast<std::size_t>(i)] = std::exp(lr0 + (lr1 - lr0) * i / (points - 1));
  return w;
}

DixmierEstimate estimate_from_pairs(const std::vector<std::pair<double, double>>& rank_and_sum,
                                    double osc_tol) {
  if (rank_and_sum.size() < 3)
    throw std::invalid_argument("estimate_from_pairs: need at least 3 window points");
  for (std::size_t i = 0; i < rank_and_sum.size(); ++i) {
    if (!(rank_and_sum[i].first > 0.0))
      throw std::invalid_argument("estimate_from_pairs: ranks must be > 0");
    if (i > 0 && !(rank_and_sum[i].first > rank_and_sum[i - 1].first))
      throw std::invalid_argument("estimate_from_pairs: ranks must be strictly increasing");
  }

  DixmierEstimate est;
  est.window_values.reserve(rank_and_sum.size());

  // fit v = L + c*x with x = 1/log(1+r); the intercept is the limit estimate
  double sx = 0.0, sxx = 0.0, sv = 0.0, sxv = 0.0;
  for (const auto& [r, partial] : rank_and_sum) {
    const double x = 1.0 / std::log1p(r);
    const double v = partial / std::log1p(r);
    est.window_values.emplace_back(r, v);
    sx += x;
    sxx += x * x;
    sv += v;
    sxv += x * v;
  }
  const double n = static_cast<double>(rank_and_sum.size());
  const double det = n * sxx - sx * sx;
  est.slope = (n * sxv - sx * sv) / det;
  est.extrapolated_limit = (sv - est.slope * sx) / n;
  est.value = est.extrapolated_limit;

  // oscillation on the detrended window: how far the data strays from the
  // 1/log model, which is what decides whether the extrapolation is usable
  double lo = 0.0, hi = 0.0;
  bool first = true;
  for (const auto& [r, v] : est.window_values) {
    const double resid = v - (est.extrapolated_limit + est.slope / std::log1p(r));
    if (first) {
      lo = hi = resid;
      first = false;
    } else {
      lo = std::min(lo, resid);
      hi = std::max(hi, resid);
    }
  }
  est.oscillation = hi - lo;
  est.converged = est.oscillation <= osc_tol;
  return est;
}

DixmierEstimate dixmier_estimate(const SpectralMeasure& a,
                                 const std::vector<double>& window,
                                 double osc_tol) {
  if (window.size() >= 1 && window.back() > a.trusted_r())
    throw std::invalid_argument("dixmier_estimate: window exceeds the trusted range of a truncated measure");
  std::vector<std::pair<double, double>> pairs;
  pairs.reserve(window.size());
  for (double r : window) pairs.emplace_back(r, a.delta(r));
  return estimate_from_pairs(pairs, osc_tol);
}

SignedDixmier signed_dixmier(const SpectralMeasure& plus_part,
                             const SpectralMeasure& minus_part,
                             const std::vector<double>& window,
                             double osc_tol) {
  SignedDixmier out;
  out.plus = dixmier_estimate(plus_part, window, osc_tol);
  out.minus = dixmier_estimate(minus_part, window, osc_tol);
  out.value = out.plus.extrapolated_limit - out.minus.extrapolated_limit;
  out.converged = out.plus.converged && out.minus.converged;
  return out;
}

} // namespace nwb::dixmier
