#include "nwb/lattice/spectra.hpp"

#include <cmath>
#include <stdexcept>

namespace nwb::lattice {

namespace {

bool is_zero_shift(int n, const std::array<double, 4>& alpha) {
  for (int j = 0; j < n; ++j)
    if (alpha[static_cast<std::size_t>(j)] != 0.0) return false;
  return true;
}

// collect |m+alpha|^2 for every mode in the closed ball of radius R
void collect_norms(int n, const std::array<double, 4>& alpha, double q0,
                   std::vector<double>& out) {
  auto range = [](double q, double a, std::int64_t& lo, std::int64_t& hi) {
    const double sr = std::sqrt(std::max(q, 0.0));
    lo = static_cast<std::int64_t>(std::ceil(-sr - a - ball_boundary_tol));
    hi = static_cast<std::int64_t>(std::floor(sr - a + ball_boundary_tol));
  };
  std::int64_t lo1, hi1;
  range(q0, alpha[0], lo1, hi1);
  for (std::int64_t m1 = lo1; m1 <= hi1; ++m1) {
    const double d1 = static_cast<double>(m1) + alpha[0];
    const double q1 = q0 - d1 * d1;
    if (q1 < 0.0) continue;
    if (n == 1) {
      out.push_back(d1 * d1);
      continue;
    }
    std::int64_t lo2, hi2;
    range(q1, alpha[1], lo2, hi2);
    for (std::int64_t m2 = lo2; m2 <= hi2; ++m2) {
      const double d2 = static_cast<double>(m2) + alpha[1];
      const double q2 = q1 - d2 * d2;
      if (q2 < 0.0) continue;
      if (n == 2) {
        out.push_back(d1 * d1 + d2 * d2);
        continue;
      }
      std::int64_t lo3, hi3;
      range(q2, alpha[2], lo3, hi3);
      for (std::int64_t m3 = lo3; m3 <= hi3; ++m3) {
        const double d3 = static_cast<double>(m3) + alpha[2];
        const double q3 = q2 - d3 * d3;
        if (q3 < 0.0) continue;
        if (n == 3) {
          out.push_back(d1 * d1 + d2 * d2 + d3 * d3);
          continue;
        }
        std::int64_t lo4, hi4;
        range(q3, alpha[3], lo4, hi4);
        for (std::int64_t m4 = lo4; m4 <= hi4; ++m4) {
          const double d4 = static_cast<double>(m4) + alpha[3];
          if (d4 * d4 <= q3 + ball_boundary_tol)
            out.push_back(d1 * d1 + d2 * d2 + d3 * d3 + d4 * d4);
        }
      }
    }
  }
}

} // namespace

dixmier::SpectralMeasure twisted_spectrum(int n, double s,
                                          const std::array<double, 4>& alpha,
                                          double R) {
  if (n < 1 || n > 4) throw std::invalid_argument("twisted_spectrum: n must be 1..4");
  if (!(s > 0.0)) throw std::invalid_argument("twisted_spectrum: order s must be > 0");
  if (!(R > 0.0)) throw std::invalid_argument("twisted_spectrum: cutoff R must be > 0");

  dixmier::Truncation trunc;
  trunc.cutoff_radius = R;
  trunc.cutoff_value = std::pow(1.0 + R * R, -0.5 * s);

  std::vector<std::pair<double, double>> atoms;
  if (is_zero_shift(n, alpha)) {
    const auto table = enumerate_shells(n, R);
    atoms.reserve(table.q.size());
    for (std::size_t i = 0; i < table.q.size(); ++i)
      atoms.emplace_back(std::pow(1.0 + static_cast<double>(table.q[i]), -0.5 * s),
                         static_cast<double>(table.count[i]));
  } else {
    // direct enumeration; cap by expected mode count
    const double expect = ball_volume(n, R) * 1.5 + 64.0;
    if (expect > 4e7)
      throw std::length_error("twisted_spectrum: cutoff too large for shifted enumeration");
    std::vector<double> norms;
    norms.reserve(static_cast<std::size_t>(expect));
    collect_norms(n, alpha, R * R + ball_boundary_tol, norms);
    atoms.reserve(norms.size());
    for (double q : norms) atoms.emplace_back(std::pow(1.0 + q, -0.5 * s), 1.0);
  }
  return dixmier::SpectralMeasure::from_atoms(std::move(atoms), trunc);
}

std::vector<std::array<double, 4>> midpoint_twist_grid(int n, int grid) {
  if (n < 1 || n > 4) throw std::invalid_argument("midpoint_twist_grid: n must be 1..4");
  if (grid < 1) throw std::invalid_argument("midpoint_twist_grid: grid must be >= 1");
  std::size_t total = 1;
  for (int j = 0; j < n; ++j) total *= static_cast<std::size_t>(grid);
  if (total > 1u << 24) throw std::length_error("midpoint_twist_grid: grid too large");

  std::vector<std::array<double, 4>> pts(total, {0.0, 0.0, 0.0, 0.0});
  for (std::size_t idx = 0; idx < total; ++idx) {
    std::size_t rem = idx;
    for (int j = n - 1; j >= 0; --j) {
      const std::size_t k = rem % static_cast<std::size_t>(grid);
      rem /= static_cast<std::size_t>(grid);
      pts[idx][static_cast<std::size_t>(j)] = (static_cast<double>(k) + 0.5) / grid;
    }
  }
  return pts;
}

} // namespace nwb::lattice
