#include "nwb/qc/connes.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <map>
#include <set>
#include <stdexcept>

namespace nwb::qc {

namespace {

// Visits every integer mode with |m|^2 <= r2max, including m = 0.
template <class Fn>
void visit_modes_rec(int n, int pos, long long rem2, Mode& m, Fn& fn) {
  if (pos == n) {
    fn(m);
    return;
  }
  const int lim = static_cast<int>(std::floor(std::sqrt(static_cast<double>(rem2)) + 0.5));
  for (int v = -lim; v <= lim; ++v) {
    const long long v2 = static_cast<long long>(v) * v;
    if (v2 > rem2) continue;
    m[pos] = v;
    visit_modes_rec(n, pos + 1, rem2 - v2, m, fn);
  }
  m[pos] = 0;
}

template <class Fn>
void visit_modes(int n, double rmax, Fn fn) {
  const long long r2max =
      static_cast<long long>(std::floor(rmax * rmax * (1.0 + 1e-12) + 1e-12));
  Mode m{0, 0, 0, 0};
  visit_modes_rec(n, 0, r2max, m, fn);
}

void check_radii(const std::vector<double>& radii) {
  if (radii.size() < 3) throw std::invalid_argument("trace check: need at least 3 radii");
  for (std::size_t i = 0; i < radii.size(); ++i) {
    if (!(radii[i] > 0.0)) throw std::invalid_argument("trace check: radii must be positive");
    if (i > 0 && !(radii[i] > radii[i - 1]))
      throw std::invalid_argument("trace check: radii must be strictly increasing");
  }
}

// Per-shell accumulation of diagonal contributions, then partial sums
// (rank, sum) at each requested radius. rank = d * #modes in the ball,
// m = 0 included. The imaginary part of every partial sum must vanish up
// to roundoff; these estimators only make sense for self-adjoint input.
std::vector<std::pair<double, double>> shell_partial_sums(
    const std::map<long long, std::pair<cdbl, long long>>& shells, int d,
    const std::vector<double>& radii) {
  std::vector<std::pair<double, double>> pairs;
  pairs.reserve(radii.size());
  auto it = shells.begin();
  cdbl sum = 0.0;
  long long modes = 0;
  for (double r : radii) {
    const double q_cut = r * r * (1.0 + 1e-12) + 1e-12;
    while (it != shells.end() && static_cast<double>(it->first) <= q_cut) {
      sum += it->second.first;
      modes += it->second.second;
      ++it;
    }
    if (std::abs(sum.imag()) > 1e-8 * (1.0 + std::abs(sum.real())))
      throw std::domain_error("trace check: partial sum has a non-real part");
    pairs.emplace_back(static_cast<double>(d) * static_cast<double>(modes), sum.real());
  }
  return pairs;
}

TraceResidueCheck assemble(std::vector<std::pair<double, double>> pairs, double residue, int n,
                           double osc_tol) {
  TraceResidueCheck out;
  out.estimate = dixmier::estimate_from_pairs(std::move(pairs), osc_tol);
  out.residue_over_n = residue / static_cast<double>(n);
  const double denom = std::max(std::abs(out.residue_over_n), 1e-300);
  out.relative_gap = std::abs(out.estimate.value - out.residue_over_n) / denom;
  return out;
}

} // namespace

TraceResidueCheck connes_check(const TorusSymbol& sigma, const std::vector<double>& radii,
                               double osc_tol) {
  const int n = sigma.dim();
  if (sigma.order() != -n)
    throw std::invalid_argument("connes_check: symbol order must be -dim");
  check_radii(radii);

  // The compression of Op(sigma) to the mode ball has diagonal blocks
  // f(0-coefficient) * xihat(m)^e * M / |m|^n per term; only the mean of
  // the x-part survives on the diagonal.
  struct Reduced {
    std::array<int, 4> pow;
    cdbl weight; // zero-mode coefficient times fiber trace
  };
  std::vector<Reduced> reduced;
  for (const auto& t : sigma.terms()) {
    const cdbl c0 = t.x_part.coeff(Mode{0, 0, 0, 0});
    const cdbl w = c0 * t.fiber.trace();
    if (std::abs(w) == 0.0) continue;
    reduced.push_back({t.dir_pow, w});
  }

  std::map<long long, std::pair<cdbl, long long>> shells;
  visit_modes(n, radii.back(), [&](const Mode& m) {
    long long q = 0;
    for (int i = 0; i < n; ++i) q += static_cast<long long>(m[i]) * m[i];
    auto& slot = shells[q];
    slot.second += 1;
    if (q == 0) return; // multiplier is homogeneous, no zero-mode value
    const double norm = std::sqrt(static_cast<double>(q));
    cdbl g = 0.0;
    for (const auto& t : reduced) {
      double mono = 1.0;
      for (int mu = 0; mu < n; ++mu)
        for (int p = 0; p < t.pow[mu]; ++p) mono *= m[mu] / norm;
      g += t.weight * mono;
    }
    slot.first += g * std::pow(norm, -n);
  });

  return assemble(shell_partial_sums(shells, sigma.fiber_dim(), radii), wodzicki_residue(sigma),
                  n, osc_tol);
}

TraceResidueCheck dixmier_of_form_square(const QuantizedForm& theta,
                                         const std::vector<double>& radii, double osc_tol) {
  if (theta.dim() != 4 || theta.degree() != 2)
    throw std::invalid_argument("dixmier_of_form_square: need a degree-2 form on T^4");
  check_radii(radii);

  const ModeOperator op = theta.op();
  const int d = op.spinor_dim();

  // (Theta^2)(m, m) = sum_k Theta(m, m+k) Theta(m+k, m); only shifts with
  // both k and -k in the band contribute.
  const std::vector<Mode> band = op.band();
  std::set<Mode> band_set(band.begin(), band.end());
  std::vector<Mode> shifts;
  for (const Mode& k : band) {
    Mode neg{-k[0], -k[1], -k[2], -k[3]};
    if (band_set.count(neg)) shifts.push_back(k);
  }

  std::map<long long, std::pair<cdbl, long long>> shells;
  visit_modes(4, radii.back(), [&](const Mode& m) {
    long long q = 0;
    for (int i = 0; i < 4; ++i) q += static_cast<long long>(m[i]) * m[i];
    cdbl diag = 0.0;
    for (const Mode& k : shifts) {
      const Mode mid{m[0] + k[0], m[1] + k[1], m[2] + k[2], m[3] + k[3]};
      diag += (op.entry(m, mid) * op.entry(mid, m)).trace();
    }
    auto& slot = shells[q];
    slot.first += diag;
    slot.second += 1;
  });

  const TorusSymbol s = theta.symbol();
  return assemble(shell_partial_sums(shells, d, radii), wodzicki_residue(s * s), 4, osc_tol);
}

} // namespace nwb::qc
