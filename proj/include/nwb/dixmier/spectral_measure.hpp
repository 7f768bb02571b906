#pragma once

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

// Atomic spectral measures: sorted (value, weight) atoms standing in for the
// eigenvalue data of a positive compact operator, possibly with real weights
// coming from a quadrature over a twist family. Provides the generalized
// singular value function mu_t, its running integral delta_r, and the
// sup_t delta_t / log(1+t) norm.

namespace nwb::dixmier {

// Relative spacing below which neighboring eigenvalues are treated as one atom.
inline constexpr double atom_merge_tol = 1e-12;

// Present when the measure is a finite truncation of an infinite spectrum.
// Atoms with value below cutoff_value may be missing, so tail-sensitive
// quantities are only trusted for ranks well inside the enumerated weight.
struct Truncation {
  double cutoff_radius = 0.0;
  double cutoff_value = 0.0;
};

class SpectralMeasure {
public:
  SpectralMeasure() = default;

  // Sorts descending by value, merges within atom_merge_tol (weighted mean),
  // and precomputes prefix sums. Throws std::invalid_argument on negative
  // values or nonpositive weights.
  static SpectralMeasure from_atoms(std::vector<std::pair<double, double>> atoms,
                                    std::optional<Truncation> trunc = std::nullopt);
  // Weight-1 atom per entry (matrix spectra).
  static SpectralMeasure from_eigenvalues(const std::vector<double>& eigs);

  std::size_t atom_count() const { return val_.size(); }
  double value(std::size_t i) const { return val_[i]; }
  double weight(std::size_t i) const { return w_[i]; }
  double total_weight() const { return cumw_.empty() ? 0.0 : cumw_.back(); }
  double trace_sum() const { return cummass_.empty() ? 0.0 : cummass_.back(); }

  bool truncated() const { return trunc_.has_value(); }
  const std::optional<Truncation>& truncation() const { return trunc_; }
  // Largest rank at which delta is trusted: half the enumerated weight for
  // truncated measures (beyond that the missing tail could bias delta),
  // unbounded otherwise.
  double trusted_r() const;

  // Generalized singular value: right-continuous nonincreasing step function,
  // mu_t = value(i) for t in [cumw(i-1), cumw(i)), zero past the total weight.
  double mu(double t) const;
  // Integral of mu over [0, r]: concave piecewise-linear, exact.
  double delta(double r) const;

  struct Norm1Inf {
    double value = 0.0;
    double attained_t = 0.0;
    bool truncation_caveat = false; // true when the sup is only a lower bound
  };
  // sup_t delta(t)/log(1+t), scanned over breakpoints and interior critical
  // points of each linear segment (the ratio is unimodal per segment).
  Norm1Inf norm_1infty() const;

private:
  std::vector<double> val_, w_, cumw_, cummass_;
  std::optional<Truncation> trunc_;
};

// Quadrature combination of a twist family: concatenates fiber atoms with
// weights scaled by the quadrature weights (which must sum to 1 within 1e-12)
// and re-normalizes into a single measure. Fibers must agree on whether they
// are truncated. The result's distribution function is the quadrature average
// of the fiber distribution functions.
SpectralMeasure gamma_combine(const std::vector<SpectralMeasure>& fibers,
                              const std::vector<double>& weights);

} // namespace nwb::dixmier
