#include "nwb/gauge/observables.hpp"

namespace nwb::gauge {

namespace {

constexpr double kPi = 3.14159265358979323846;

} // namespace

double ym_action(const GaugeField& u) { return ym_action(curvature(u)); }

double ym_action(const TwoFormField& f) { return l2_norm2(f); }

double topological_charge(const GaugeField& u) { return topological_charge(curvature(u)); }

double topological_charge(const TwoFormField& f) {
  // tr(f ^ f) = 2 (tr f01 f23 - tr f02 f13 + tr f03 f12) e0123 with f = -iF;
  // for anti-hermitian F each trace below is real, so take the real part only
  // to shed roundoff
  const double a = f.spacing();
  const double dvol = a * a * a * a;
  const std::size_t nsites = f.comp[0].size();
  double q = 0.0;
  for (std::size_t s = 0; s < nsites; ++s) {
    double pf = -((f.comp[plane_index(0, 1)][s] * f.comp[plane_index(2, 3)][s]).trace().real() -
                  (f.comp[plane_index(0, 2)][s] * f.comp[plane_index(1, 3)][s]).trace().real() +
                  (f.comp[plane_index(0, 3)][s] * f.comp[plane_index(1, 2)][s]).trace().real());
    q += pf;
  }
  return q * dvol * 2.0 / (8.0 * kPi * kPi);
}

} // namespace nwb::gauge
