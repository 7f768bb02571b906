#include "nwb/gauge/field.hpp"

#include <cmath>
#include <complex>
#include <cstdlib>
#include <stdexcept>
#include <string>

namespace nwb::gauge {

namespace {

constexpr double kPi = 3.14159265358979323846;

} // namespace

Lattice4::Lattice4(int extent) : L(extent) {
  if (L < 2) throw std::invalid_argument("Lattice4: extent must be at least 2");
}

std::size_t Lattice4::index(const std::array<int, 4>& x) const {
  std::size_t s = 0;
  for (int mu = 0; mu < 4; ++mu) {
    int c = x[mu] % L;
    if (c < 0) c += L;
    s = s * L + static_cast<std::size_t>(c);
  }
  return s;
}

std::array<int, 4> Lattice4::coords(std::size_t site) const {
  std::array<int, 4> x{};
  for (int mu = 3; mu >= 0; --mu) {
    x[mu] = static_cast<int>(site % L);
    site /= L;
  }
  return x;
}

std::size_t Lattice4::shift(std::size_t site, int mu, int dir) const {
  // strides: x3 is fastest, x0 slowest
  std::size_t stride = 1;
  for (int k = 3; k > mu; --k) stride *= L;
  std::size_t c = (site / stride) % L;
  std::size_t base = site - c * stride;
  std::size_t cc;
  if (dir > 0) {
    cc = (c + 1 == static_cast<std::size_t>(L)) ? 0 : c + 1;
  } else {
    cc = (c == 0) ? static_cast<std::size_t>(L) - 1 : c - 1;
  }
  return base + cc * stride;
}

double GaugeField::spacing() const { return 2.0 * kPi / L; }

double GaugeField::unitarity_defect() const {
  double worst = 0.0;
  Eigen::MatrixXcd id = Eigen::MatrixXcd::Identity(rank, rank);
  for (int mu = 0; mu < 4; ++mu) {
    for (const auto& u : link[mu]) {
      double dev = (u * u.adjoint() - id).cwiseAbs().maxCoeff();
      if (dev > worst) worst = dev;
    }
  }
  return worst;
}

GaugeField identity_field(int L, int rank) {
  if (rank < 1) throw std::invalid_argument("identity_field: rank must be positive");
  Lattice4 lat(L);
  GaugeField u;
  u.rank = rank;
  u.L = L;
  for (int mu = 0; mu < 4; ++mu)
    u.link[mu].assign(lat.nsites(), Eigen::MatrixXcd::Identity(rank, rank));
  return u;
}

GaugeField constant_flux_u1(int L, const std::array<std::array<int, 4>, 4>& k) {
  Lattice4 lat(L);
  for (int mu = 0; mu < 4; ++mu) {
    if (k[mu][mu] != 0)
      throw std::invalid_argument("constant_flux_u1: flux matrix must have zero diagonal");
    for (int nu = 0; nu < 4; ++nu) {
      if (k[mu][nu] != -k[nu][mu])
        throw std::invalid_argument("constant_flux_u1: flux matrix must be antisymmetric");
      if (2 * std::abs(k[mu][nu]) >= L * L)
        throw std::invalid_argument(
            "constant_flux_u1: |k| = " + std::to_string(std::abs(k[mu][nu])) +
            " aliases on an L = " + std::to_string(L) +
            " lattice (need |k| < L^2/2 so the plaquette angle stays inside the "
            "principal branch)");
    }
  }

  GaugeField u = identity_field(L, 1);
  // phase accumulators per link; for each ordered pair mu < nu with flux k the
  // interior links pick up exp(-i 2pi k x_nu / L^2) on direction mu and the
  // x_nu = L-1 boundary links of direction nu carry the transition twist
  // exp(i 2pi k x_mu / L)
  std::vector<double> phase[4];
  for (int mu = 0; mu < 4; ++mu) phase[mu].assign(lat.nsites(), 0.0);

  for (std::size_t s = 0; s < lat.nsites(); ++s) {
    std::array<int, 4> x = lat.coords(s);
    for (int mu = 0; mu < 4; ++mu) {
      for (int nu = mu + 1; nu < 4; ++nu) {
        if (k[mu][nu] == 0) continue;
        double alpha = 2.0 * kPi * k[mu][nu] / (static_cast<double>(L) * L);
        phase[mu][s] -= alpha * x[nu];
        if (x[nu] == L - 1) phase[nu][s] += 2.0 * kPi * k[mu][nu] * x[mu] / L;
      }
    }
  }
  for (int mu = 0; mu < 4; ++mu)
    for (std::size_t s = 0; s < lat.nsites(); ++s)
      u.link[mu][s](0, 0) = std::polar(1.0, phase[mu][s]);
  return u;
}

GaugeField gauge_transformed(const GaugeField& u, const std::vector<Eigen::MatrixXcd>& g) {
  Lattice4 lat(u.L);
  if (g.size() != lat.nsites())
    throw std::invalid_argument("gauge_transformed: need one transformation per site");
  GaugeField v = u;
  for (int mu = 0; mu < 4; ++mu) {
    for (std::size_t s = 0; s < lat.nsites(); ++s) {
      std::size_t sp = lat.shift(s, mu, +1);
      v.link[mu][s] = g[s] * u.link[mu][s] * g[sp].adjoint();
    }
  }
  return v;
}

} // namespace nwb::gauge
