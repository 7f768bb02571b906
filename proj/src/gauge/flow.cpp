#include "nwb/gauge/flow.hpp"

#include "u1_clover.hpp"

#include <cmath>
#include <complex>
#include <stdexcept>
#include <string>

namespace nwb::gauge {

namespace {

GaugeField field_from_angles(int L, const std::array<std::vector<double>, 4>& phi) {
  GaugeField u = identity_field(L, 1);
  for (int mu = 0; mu < 4; ++mu)
    for (std::size_t s = 0; s < phi[mu].size(); ++s)
      u.link[mu][s](0, 0) = std::polar(1.0, phi[mu][s]);
  return u;
}

} // namespace

std::array<std::vector<double>, 4> ym_force(const GaugeField& u) {
  if (u.rank != 1)
    throw std::invalid_argument("ym_force: descent is implemented for abelian fields only");
  Lattice4 lat(u.L);
  const double a = u.spacing();
  auto phi = detail::link_angles(u);
  auto f = detail::u1_clover(lat, phi, a);
  return detail::u1_force(lat, f, a);
}

FlowResult ym_gradient_flow(const GaugeField& u0, double step, int iters) {
  if (u0.rank != 1)
    throw std::invalid_argument(
        "ym_gradient_flow: descent is implemented for abelian fields only");
  if (!(step > 0.0)) throw std::invalid_argument("ym_gradient_flow: step must be positive");
  if (iters < 0) throw std::invalid_argument("ym_gradient_flow: iters must be nonnegative");

  Lattice4 lat(u0.L);
  const double a = u0.spacing();
  auto phi = detail::link_angles(u0);
  auto f = detail::u1_clover(lat, phi, a);
  double action = detail::u1_action(f, a);

  FlowResult out;
  out.action_trace.reserve(static_cast<std::size_t>(iters) + 1);
  out.action_trace.push_back(action);

  std::array<std::vector<double>, 4> trial;
  for (int it = 0; it < iters; ++it) {
    auto g = detail::u1_force(lat, f, a);
    double g2 = 0.0;
    for (int mu = 0; mu < 4; ++mu)
      for (double v : g[mu]) g2 += v * v;
    if (g2 == 0.0) break;

    double eta = step;
    bool accepted = false;
    std::array<std::vector<double>, 6> trial_f;
    double trial_action = 0.0;
    for (int halvings = 0; halvings < 60; ++halvings, eta *= 0.5) {
      trial = phi;
      for (int mu = 0; mu < 4; ++mu)
        for (std::size_t s = 0; s < trial[mu].size(); ++s) trial[mu][s] -= eta * g[mu][s];
      trial_f = detail::u1_clover(lat, trial, a);
      trial_action = detail::u1_action(trial_f, a);
      if (trial_action <= action) {
        accepted = true;
        break;
      }
    }
    if (!accepted) {
      if (it == 0)
        throw std::runtime_error(
            "ym_gradient_flow: step " + std::to_string(step) +
            " cannot decrease the action even after backtracking; start from a "
            "smaller step");
      break; // stationary to machine precision
    }
    phi = trial;
    f = trial_f;
    action = trial_action;
    out.action_trace.push_back(action);
  }

  out.field = field_from_angles(u0.L, phi);
  return out;
}

} // namespace nwb::gauge
