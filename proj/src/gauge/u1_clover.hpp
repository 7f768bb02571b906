#pragma once

#include "nwb/gauge/field.hpp"

#include <array>
#include <cmath>
#include <stdexcept>
#include <vector>

// Angle-level clover arithmetic for abelian fields, shared between the
// curvature fast path and the gradient flow inner loop. F = i f with f real.

namespace nwb::gauge::detail {

constexpr double kPi = 3.14159265358979323846;

inline double principal_angle(double theta) {
  double t = std::remainder(theta, 2.0 * kPi);
  if (std::abs(t) > kPi - 1e-9)
    throw std::runtime_error(
        "curvature: plaquette angle at the principal branch cut; the lattice is "
        "too coarse for this field");
  return t;
}

inline std::array<std::vector<double>, 4> link_angles(const GaugeField& u) {
  if (u.rank != 1)
    throw std::invalid_argument("link_angles: abelian fields only");
  Lattice4 lat(u.L);
  std::array<std::vector<double>, 4> phi;
  for (int mu = 0; mu < 4; ++mu) {
    phi[mu].resize(lat.nsites());
    for (std::size_t s = 0; s < lat.nsites(); ++s) phi[mu][s] = std::arg(u.link[mu][s](0, 0));
  }
  return phi;
}

// clover field strength f[plane][site], planes ordered as plane_index
inline std::array<std::vector<double>, 6> u1_clover(
    const Lattice4& lat, const std::array<std::vector<double>, 4>& phi, double spacing) {
  const double inv4a2 = 1.0 / (4.0 * spacing * spacing);
  constexpr int dirs[6][2] = {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}};
  std::array<std::vector<double>, 6> f;
  for (int p = 0; p < 6; ++p) {
    const int mu = dirs[p][0], nu = dirs[p][1];
    f[p].resize(lat.nsites());
    for (std::size_t s = 0; s < lat.nsites(); ++s) {
      std::size_t sxu = lat.shift(s, mu, +1), sxd = lat.shift(s, mu, -1);
      std::size_t syu = lat.shift(s, nu, +1), syd = lat.shift(s, nu, -1);
      std::size_t sxdyu = lat.shift(sxd, nu, +1), sxdyd = lat.shift(sxd, nu, -1);
      std::size_t sxuyd = lat.shift(sxu, nu, -1);
      double t1 = principal_angle(phi[mu][s] + phi[nu][sxu] - phi[mu][syu] - phi[nu][s]);
      double t2 = principal_angle(phi[nu][s] - phi[mu][sxdyu] - phi[nu][sxd] + phi[mu][sxd]);
      double t3 = principal_angle(-phi[mu][sxd] - phi[nu][sxdyd] + phi[mu][sxdyd] + phi[nu][syd]);
      double t4 = principal_angle(-phi[nu][syd] + phi[mu][syd] + phi[nu][sxuyd] - phi[mu][s]);
      f[p][s] = (t1 + t2 + t3 + t4) * inv4a2;
    }
  }
  return f;
}

inline double u1_action(const std::array<std::vector<double>, 6>& f, double spacing) {
  const double dvol = spacing * spacing * spacing * spacing;
  double total = 0.0;
  for (int p = 0; p < 6; ++p)
    for (double v : f[p]) total += v * v;
  return total * dvol;
}

// exact gradient of u1_action(u1_clover(phi)) with respect to the link angles;
// each leaf angle is linear in phi away from the branch cut, so this is the
// analytic derivative, not a discretization of one
inline std::array<std::vector<double>, 4> u1_force(
    const Lattice4& lat, const std::array<std::vector<double>, 6>& f, double spacing) {
  std::array<std::vector<double>, 4> g;
  for (int mu = 0; mu < 4; ++mu) g[mu].assign(lat.nsites(), 0.0);
  constexpr int dirs[6][2] = {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}};
  const double half_a2 = 0.5 * spacing * spacing;
  for (int p = 0; p < 6; ++p) {
    const int mu = dirs[p][0], nu = dirs[p][1];
    for (std::size_t y = 0; y < lat.nsites(); ++y) {
      std::size_t ynu = lat.shift(y, nu, +1), ynd = lat.shift(y, nu, -1);
      std::size_t yxnu = lat.shift(ynu, mu, +1), yxnd = lat.shift(ynd, mu, +1);
      double d = f[p][ynu] + f[p][yxnu] - f[p][ynd] - f[p][yxnd];
      // the mu-link at y couples to f_{mu nu}; the nu-link couples with the
      // opposite sign through f_{nu mu} = -f_{mu nu} and swapped roles
      g[mu][y] += half_a2 * d;
      std::size_t ymu = lat.shift(y, mu, +1), ymd = lat.shift(y, mu, -1);
      std::size_t yn_mu = lat.shift(ymu, nu, +1), yn_md = lat.shift(ymd, nu, +1);
      double dn = f[p][ymu] + f[p][yn_mu] - f[p][ymd] - f[p][yn_md];
      g[nu][y] -= half_a2 * dn;
    }
  }
  return g;
}

} // namespace nwb::gauge::detail
