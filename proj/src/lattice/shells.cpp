#include "nwb/lattice/shells.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace nwb::lattice {

namespace {

// Dense histogram over q = 0..q_max of lattice points per squared radius.
// n = 1, 2 are filled by direct scans; no floating point enters the counts.
std::vector<std::int64_t> hist_direct(int n, std::int64_t q_max) {
  std::vector<std::int64_t> h(static_cast<std::size_t>(q_max) + 1, 0);
  const std::int64_t r = static_cast<std::int64_t>(std::floor(std::sqrt(static_cast<double>(q_max))));
  if (n == 1) {
    for (std::int64_t m = -r; m <= r; ++m) {
      const std::int64_t q = m * m;
      if (q <= q_max) ++h[static_cast<std::size_t>(q)];
    }
    return h;
  }
  for (std::int64_t m1 = -r; m1 <= r; ++m1) {
    const std::int64_t q1 = m1 * m1;
    if (q1 > q_max) continue;
    // largest |m2| with q1 + m2^2 <= q_max; integer refinement guards the sqrt
    std::int64_t m2 = static_cast<std::int64_t>(std::floor(std::sqrt(static_cast<double>(q_max - q1))));
    while ((m2 + 1) * (m2 + 1) <= q_max - q1) ++m2;
    while (m2 > 0 && m2 * m2 > q_max - q1) --m2;
    for (std::int64_t k = -m2; k <= m2; ++k) ++h[static_cast<std::size_t>(q1 + k * k)];
  }
  return h;
}

std::vector<std::int64_t> convolve(const std::vector<std::int64_t>& a,
                                   const std::vector<std::int64_t>& b) {
  std::vector<std::int64_t> out(a.size(), 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    const std::size_t jmax = a.size() - i;
    for (std::size_t j = 0; j < jmax && j < b.size(); ++j) {
      if (b[j] != 0) out[i + j] += a[i] * b[j];
    }
  }
  return out;
}

} // namespace

std::int64_t LatticeShellTable::total() const {
  std::int64_t s = 0;
  for (auto c : count) s += c;
  return s;
}

LatticeShellTable enumerate_shells(int n, double r_max) {
  if (n < 1 || n > 4) throw std::invalid_argument("enumerate_shells: n must be 1..4, got " + std::to_string(n));
  if (!(r_max >= 0.0) || !std::isfinite(r_max))
    throw std::invalid_argument("enumerate_shells: r_max must be finite and >= 0");

  const double q_max_d = std::floor(r_max * r_max + ball_boundary_tol);
  // Memory budget: one int64 per squared radius. 2^27 entries = 1 GiB.
  if (q_max_d > static_cast<double>(std::int64_t{1} << 27))
    throw std::length_error("enumerate_shells: r_max too large for the dense shell histogram");
  const std::int64_t q_max = static_cast<std::int64_t>(q_max_d);

  std::vector<std::int64_t> h;
  if (n <= 2) {
    h = hist_direct(n, q_max);
  } else {
    // Convolution cost grows like q_max^2; keep it under ~1e9 products.
    if (q_max > 45000)
      throw std::length_error("enumerate_shells: r_max too large for exact convolution at n >= 3");
    const auto h2 = hist_direct(2, q_max);
    h = (n == 3) ? convolve(h2, hist_direct(1, q_max)) : convolve(h2, h2);
  }

  LatticeShellTable t;
  t.n = n;
  t.q_max = q_max;
  for (std::int64_t qq = 0; qq <= q_max; ++qq) {
    const std::int64_t c = h[static_cast<std::size_t>(qq)];
    if (c != 0) {
      t.q.push_back(qq);
      t.count.push_back(c);
    }
  }
  return t;
}

std::int64_t count_ball(int n, double r, const std::array<double, 4>& alpha) {
  if (n < 1 || n > 4) throw std::invalid_argument("count_ball: n must be 1..4, got " + std::to_string(n));
  if (!(r >= 0.0) || !std::isfinite(r)) return 0;

  // Count integers m with (m + a)^2 <= q, i.e. m in [-sqrt(q)-a, sqrt(q)-a].
  auto line = [](double q, double a) -> std::int64_t {
    if (q < 0.0) return 0;
    const double s = std::sqrt(q);
    const std::int64_t lo = static_cast<std::int64_t>(std::ceil(-s - a - ball_boundary_tol));
    const std::int64_t hi = static_cast<std::int64_t>(std::floor(s - a + ball_boundary_tol));
    return hi >= lo ? hi - lo + 1 : 0;
  };

  const double q0 = r * r + ball_boundary_tol;
  if (n == 1) return line(q0, alpha[0]);

  std::int64_t total = 0;
  const std::int64_t lo1 = static_cast<std::int64_t>(std::ceil(-std::sqrt(q0) - alpha[0] - ball_boundary_tol));
  const std::int64_t hi1 = static_cast<std::int64_t>(std::floor(std::sqrt(q0) - alpha[0] + ball_boundary_tol));
  for (std::int64_t m1 = lo1; m1 <= hi1; ++m1) {
    const double d1 = (static_cast<double>(m1) + alpha[0]);
    const double q1 = q0 - d1 * d1;
    if (q1 < 0.0) continue;
    if (n == 2) {
      total += line(q1, alpha[1]);
      continue;
    }
    const std::int64_t lo2 = static_cast<std::int64_t>(std::ceil(-std::sqrt(q1) - alpha[1] - ball_boundary_tol));
    const std::int64_t hi2 = static_cast<std::int64_t>(std::floor(std::sqrt(q1) - alpha[1] + ball_boundary_tol));
    for (std::int64_t m2 = lo2; m2 <= hi2; ++m2) {
      const double d2 = (static_cast<double>(m2) + alpha[1]);
      const double q2 = q1 - d2 * d2;
      if (q2 < 0.0) continue;
      if (n == 3) {
        total += line(q2, alpha[2]);
        continue;
      }
      const std::int64_t lo3 = static_cast<std::int64_t>(std::ceil(-std::sqrt(q2) - alpha[2] - ball_boundary_tol));
      const std::int64_t hi3 = static_cast<std::int64_t>(std::floor(std::sqrt(q2) - alpha[2] + ball_boundary_tol));
      for (std::int64_t m3 = lo3; m3 <= hi3; ++m3) {
        const double d3 = (static_cast<double>(m3) + alpha[2]);
        total += line(q2 - d3 * d3, alpha[3]);
      }
    }
  }
  return total;
}

double ball_volume(int n, double r) {
  if (n < 1 || n > 4) throw std::invalid_argument("ball_volume: n must be 1..4");
  return std::pow(std::numbers::pi, n / 2.0) / std::tgamma(n / 2.0 + 1.0) * std::pow(r, n);
}

double sphere_area(int n) {
  if (n < 1 || n > 4) throw std::invalid_argument("sphere_area: n must be 1..4");
  return 2.0 * std::pow(std::numbers::pi, n / 2.0) / std::tgamma(n / 2.0);
}

} // namespace nwb::lattice
