#pragma once

#include "nwb/qc/trig_poly.hpp"

#include <Eigen/Dense>

#include <vector>

// Operators on l^2(Z^n) x C^d generated by multiplication operators,
// the sign operator F = gamma.m/|m|, and quantized differentials i[F, a].
// Represented as sums of factor words and evaluated lazily: any matrix
// element at any mode pair is computed exactly from the word structure,
// with no truncation cutoff. Identities like F^2 = 1 and dhat^2 = 0 then
// hold at every mode, not just away from a band boundary.

namespace nwb::qc {

// F(m) = gamma.m/|m| for m != 0; the zero mode gets gamma_0 so that F stays
// an involution (any involutive extension differs by finite rank, which no
// Dixmier-type functional sees).
Eigen::MatrixXcd sign_dirac_at(int n, const Mode& m);

class ModeOperator {
public:
  struct Factor {
    enum class Kind { mult, sign, dhat };
    Kind kind = Kind::mult;
    TrigPoly poly; // unused for sign
  };
  struct Word {
    cdbl coeff{1.0, 0.0};
    std::vector<Factor> factors; // applied right to left; empty = identity
  };

  static ModeOperator zero(int n);
  static ModeOperator identity(int n);
  static ModeOperator mult(TrigPoly a);
  static ModeOperator sign_dirac(int n);
  static ModeOperator dhat(TrigPoly a); // i[F, a]

  int dim() const { return n_; }
  int spinor_dim() const { return d_; }
  const std::vector<Word>& words() const { return words_; }

  ModeOperator operator+(const ModeOperator& o) const;
  ModeOperator operator-(const ModeOperator& o) const;
  ModeOperator operator*(const ModeOperator& o) const;
  ModeOperator scaled(cdbl s) const;
  ModeOperator adjoint() const;

  // exact d x d block at (row, col)
  Eigen::MatrixXcd entry(const Mode& row, const Mode& col) const;
  // mode shifts k such that entry(m + k, m) can be nonzero
  std::vector<Mode> band() const;

  // dense truncation over the box |m|_inf <= M, modes ordered
  // lexicographically, each mode carrying a d x d block
  Eigen::MatrixXcd dense(int M) const;
  std::vector<Mode> dense_modes(int M) const;

private:
  ModeOperator(int n, int d) : n_(n), d_(d) {}
  int n_, d_;
  std::vector<Word> words_;
};

} // namespace nwb::qc
