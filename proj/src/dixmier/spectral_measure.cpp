#include "nwb/dixmier/spectral_measure.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace nwb::dixmier {

namespace {

bool mergeable(double hi, double lo) {
  return hi - lo <= atom_merge_tol * std::max(1.0, hi);
}

} // namespace

SpectralMeasure SpectralMeasure::from_atoms(std::vector<std::pair<double, double>> atoms,
                                            std::optional<Truncation> trunc) {
  for (const auto& [v, w] : atoms) {
    if (!(v >= 0.0) || !std::isfinite(v))
      throw std::invalid_argument("SpectralMeasure: atom values must be finite and >= 0");
    if (!(w > 0.0) || !std::isfinite(w))
      throw std::invalid_argument("SpectralMeasure: atom weights must be finite and > 0");
  }
  std::sort(atoms.begin(), atoms.end(),
            [](const auto& a, const auto& b) { return a.first > b.first; });

  SpectralMeasure m;
  m.trunc_ = trunc;
  m.val_.reserve(atoms.size());
  m.w_.reserve(atoms.size());
  for (const auto& [v, w] : atoms) {
    if (!m.val_.empty() && mergeable(m.val_.back(), v)) {
      // weighted mean keeps the merged atom inside the cluster
      const double wt = m.w_.back() + w;
      m.val_.back() = (m.val_.back() * m.w_.back() + v * w) / wt;
      m.w_.back() = wt;
    } else {
      m.val_.push_back(v);
      m.w_.push_back(w);
    }
  }

  m.cumw_.resize(m.val_.size());
  m.cummass_.resize(m.val_.size());
  double cw = 0.0, cm = 0.0;
  for (std::size_t i = 0; i < m.val_.size(); ++i) {
    cw += m.w_[i];
    cm += m.val_[i] * m.w_[i];
    m.cumw_[i] = cw;
    m.cummass_[i] = cm;
  }
  return m;
}

SpectralMeasure SpectralMeasure::from_eigenvalues(const std::vector<double>& eigs) {
  std::vector<std::pair<double, double>> atoms;
  atoms.reserve(eigs.size());
  for (double v : eigs) atoms.emplace_back(v, 1.0);
  return from_atoms(std::move(atoms));
}

double SpectralMeasure::trusted_r() const {
  if (!trunc_) return std::numeric_limits<double>::infinity();
  return 0.5 * total_weight();
}

double SpectralMeasure::mu(double t) const {
  if (t < 0.0) throw std::invalid_argument("mu: t must be >= 0");
  const auto it = std::upper_bound(cumw_.begin(), cumw_.end(), t);
  if (it == cumw_.end()) return 0.0;
  return val_[static_cast<std::size_t>(it - cumw_.begin())];
}

double SpectralMeasure::delta(double r) const {
  if (r <= 0.0) return 0.0;
  const auto it = std::lower_bound(cumw_.begin(), cumw_.end(), r);
  if (it == cumw_.end()) return trace_sum();
  const std::size_t i = static_cast<std::size_t>(it - cumw_.begin());
  const double w_before = (i == 0) ? 0.0 : cumw_[i - 1];
  const double m_before = (i == 0) ? 0.0 : cummass_[i - 1];
  return m_before + val_[i] * (r - w_before);
}

SpectralMeasure::Norm1Inf SpectralMeasure::norm_1infty() const {
  Norm1Inf out;
  out.truncation_caveat = truncated();
  if (val_.empty()) return out;

  auto ratio = [this](double t) { return delta(t) / std::log1p(t); };
  auto consider = [&out, &ratio](double t) {
    if (t <= 0.0) return;
    const double g = ratio(t);
    if (g > out.value) {
      out.value = g;
      out.attained_t = t;
    }
  };

  // t -> 0+ limit of the ratio is the top value
  out.value = val_[0];
  out.attained_t = 0.0;

  for (std::size_t i = 0; i < val_.size(); ++i) {
    const double lo = (i == 0) ? 0.0 : cumw_[i - 1];
    const double hi = cumw_[i];
    consider(hi);
    // interior critical point of delta(t)/log(1+t) on a segment with slope
    // lam solves h(t) = lam*log(1+t) - delta(t)/(1+t) = 0; h is increasing
    const double lam = val_[i];
    auto h = [&](double t) { return lam * std::log1p(t) - delta(t) / (1.0 + t); };
    double a = std::max(lo, 1e-300), b = hi;
    if (h(a) < 0.0 && h(b) > 0.0) {
      for (int it = 0; it < 200 && (b - a) > 1e-14 * (1.0 + b); ++it) {
        const double mid = 0.5 * (a + b);
        (h(mid) < 0.0 ? a : b) = mid;
      }
      consider(0.5 * (a + b));
    }
  }
  // past the last breakpoint the ratio decays, so nothing more to scan
  return out;
}

SpectralMeasure gamma_combine(const std::vector<SpectralMeasure>& fibers,
                              const std::vector<double>& weights) {
  if (fibers.empty()) throw std::invalid_argument("gamma_combine: empty family");
  if (fibers.size() != weights.size())
    throw std::invalid_argument("gamma_combine: fiber/weight count mismatch");
  double wsum = 0.0;
  for (double w : weights) {
    if (!(w > 0.0)) throw std::invalid_argument("gamma_combine: weights must be > 0");
    wsum += w;
  }
  if (std::abs(wsum - 1.0) > 1e-12)
    throw std::invalid_argument("gamma_combine: quadrature weights must sum to 1");

  const bool trunc0 = fibers.front().truncated();
  for (const auto& f : fibers)
    if (f.truncated() != trunc0)
      throw std::invalid_argument("gamma_combine: fibers disagree on truncation");

  std::vector<std::pair<double, double>> atoms;
  std::size_t n = 0;
  for (const auto& f : fibers) n += f.atom_count();
  atoms.reserve(n);
  for (std::size_t k = 0; k < fibers.size(); ++k)
    for (std::size_t i = 0; i < fibers[k].atom_count(); ++i)
      atoms.emplace_back(fibers[k].value(i), fibers[k].weight(i) * weights[k]);

  std::optional<Truncation> trunc;
  if (trunc0) {
    Truncation t;
    t.cutoff_radius = std::numeric_limits<double>::infinity();
    t.cutoff_value = 0.0;
    for (const auto& f : fibers) {
      t.cutoff_radius = std::min(t.cutoff_radius, f.truncation()->cutoff_radius);
      t.cutoff_value = std::max(t.cutoff_value, f.truncation()->cutoff_value);
    }
    trunc = t;
  }
  return SpectralMeasure::from_atoms(std::move(atoms), trunc);
}

} // namespace nwb::dixmier
