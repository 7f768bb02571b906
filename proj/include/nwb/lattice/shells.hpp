#pragma once

#include <array>
#include <cstdint>
#include <vector>

// Integer lattice geometry for flat-torus spectra: shell tables of Z^n
// (distinct squared radii with exact point counts) and shifted ball counts.
// n runs from 1 to 4.

namespace nwb::lattice {

struct LatticeShellTable {
  int n = 0;
  std::int64_t q_max = 0;            // shells cover 0 <= q <= q_max
  std::vector<std::int64_t> q;       // ascending distinct squared radii
  std::vector<std::int64_t> count;   // lattice points with |m|^2 == q
  std::int64_t total() const;
};

// All shells with radius <= r_max. Exact integer arithmetic; n=3,4 are
// built by convolving lower-dimensional tables. Throws std::invalid_argument
// for bad n and std::length_error when the table would exceed the memory
// or cost budget.
LatticeShellTable enumerate_shells(int n, double r_max);

// #{ m in Z^n : |m + alpha|^2 <= r^2 + tol }, closed ball with a shifted
// lattice; the innermost coordinate is counted in closed form.
std::int64_t count_ball(int n, double r, const std::array<double, 4>& alpha);

// Membership slack for boundary ties (see count_ball).
inline constexpr double ball_boundary_tol = 1e-12;

double ball_volume(int n, double r); // volume of the n-ball
double sphere_area(int n);           // area of S^{n-1} in R^n

} // namespace nwb::lattice
