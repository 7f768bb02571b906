#pragma once

#include "nwb/qc/mode_operator.hpp"
#include "nwb/qc/symbol.hpp"
#include "nwb/qc/trig_poly.hpp"

#include <vector>

// Quantized differential forms: finite sums of canonical words
// a0 dhat(a1) ... dhat(ak), kept in canonical shape by the rewriting rule
// dhat(a) b = dhat(ab) - a dhat(b). The canonical shape is what makes the
// symbol map and the classical part exact: sigma_{-1}(dhat a) is the
// tangential Clifford factor r(da - <xihat,da> xihat)/|xi| and
// c(a0 dhat a1 ... dhat ak) = a0 da1 (x) ... (x) dak.

namespace nwb::qc {

// rank-k tensor field with trig-polynomial components, rank <= 4
class ClassicalTensor {
public:
  ClassicalTensor(int n, int rank);

  int dim() const { return n_; }
  int rank() const { return rank_; }
  TrigPoly& at(const std::vector<int>& idx);
  const TrigPoly& at(const std::vector<int>& idx) const;

  ClassicalTensor operator+(const ClassicalTensor& o) const;
  ClassicalTensor operator-(const ClassicalTensor& o) const;
  ClassicalTensor scaled(cdbl s) const;
  // rank-2 only: the projection (T - T^t)/2
  ClassicalTensor antisymmetrized() const;

  double norm2_at(const std::array<double, 4>& x) const; // sum of |component|^2
  double max_abs_coeff_diff(const ClassicalTensor& o) const;

private:
  std::size_t flat(const std::vector<int>& idx) const;
  int n_, rank_;
  std::vector<TrigPoly> comp_;
};

// exterior derivative of a covector field, in the projection normalization:
// (dA)_{mu nu} = (d_mu A_nu - d_nu A_mu)/2 = Ac(grad (x) A)
ClassicalTensor exterior_d(const ClassicalTensor& a);

struct FormWord {
  cdbl coeff{1.0, 0.0};
  TrigPoly a0;
  std::vector<TrigPoly> dparts;
};

class QuantizedForm {
public:
  static QuantizedForm zero(int n, int degree);
  static QuantizedForm function(TrigPoly a); // degree 0
  static QuantizedForm dhat(TrigPoly a);     // degree 1

  int dim() const { return n_; }
  int degree() const { return degree_; }
  const std::vector<FormWord>& words() const { return words_; }

  QuantizedForm operator+(const QuantizedForm& o) const;
  QuantizedForm operator*(const QuantizedForm& o) const; // degrees add
  QuantizedForm scaled(cdbl s) const;
  QuantizedForm quantized_d() const; // dhat(a0) dhat(a1) ... per word

  ModeOperator op() const;
  TorusSymbol symbol() const;           // order -degree
  ClassicalTensor classical_part() const; // rank = degree

private:
  QuantizedForm(int n, int degree) : n_(n), degree_(degree) {}
  int n_, degree_;
  std::vector<FormWord> words_;
};

// principal symbol of dhat(a): sum_mu (d_mu a)(gamma_mu - xihat_mu gamma.xihat)
TorusSymbol dhat_symbol(const TrigPoly& a);

// Theta = sum_i dhat(a_i) dhat(b_i) + a_i^2 dhat(b_i) dhat(b_i), the curvature
// of the q-connection with components a_i dhat(b_i)
QuantizedForm quantized_curvature(const std::vector<std::pair<TrigPoly, TrigPoly>>& pairs);

} // namespace nwb::qc
