#pragma once

#include <Eigen/Dense>

#include <array>
#include <cstddef>
#include <vector>

// Lattice gauge fields on the torus (R/2piZ)^4 discretized with L sites per
// direction, lattice spacing a = 2pi/L. Links are unitary r x r matrices;
// r = 1 is the abelian case all fixtures use, but the data model carries
// general unitary fibers.

namespace nwb::gauge {

// site indexing for (Z/L)^4, lexicographic with x3 fastest
struct Lattice4 {
  int L = 0;

  explicit Lattice4(int extent);

  std::size_t nsites() const { return static_cast<std::size_t>(L) * L * L * L; }
  std::size_t index(const std::array<int, 4>& x) const;
  std::array<int, 4> coords(std::size_t site) const;
  // neighbor in direction mu (0..3), dir = +1 or -1, periodic wrap
  std::size_t shift(std::size_t site, int mu, int dir) const;
};

struct GaugeField {
  int rank = 1;
  int L = 0;
  // link[mu][site] is the unitary on the bond from site to site + mu_hat
  std::array<std::vector<Eigen::MatrixXcd>, 4> link;

  Lattice4 lattice() const { return Lattice4(L); }
  double spacing() const;
  // largest deviation of U U^+ from the identity over all links
  double unitarity_defect() const;
};

GaugeField identity_field(int L, int rank);

// U(1) bundle with prescribed integer fluxes: every (mu,nu) plaquette angle
// equals 2 pi k[mu][nu] / L^2, boundary twists carrying the Chern numbers.
// k must be antisymmetric with |k[mu][nu]| < L^2 / 2 (no flux aliasing).
GaugeField constant_flux_u1(int L, const std::array<std::array<int, 4>, 4>& k);

// U_mu(x) -> g(x) U_mu(x) g(x + mu)^+ with one unitary per site
GaugeField gauge_transformed(const GaugeField& u, const std::vector<Eigen::MatrixXcd>& g);

} // namespace nwb::gauge
