#include "nwb/qc/forms.hpp"

#include "nwb/qc/clifford.hpp"

#include <cmath>
#include <stdexcept>

namespace nwb::qc {

ClassicalTensor::ClassicalTensor(int n, int rank) : n_(n), rank_(rank) {
  if (n < 1 || n > 4) throw std::invalid_argument("ClassicalTensor: n must be 1..4");
  if (rank < 0 || rank > 4) throw std::invalid_argument("ClassicalTensor: rank must be 0..4");
  std::size_t size = 1;
  for (int r = 0; r < rank; ++r) size *= static_cast<std::size_t>(n);
  comp_.assign(size, TrigPoly(n));
}

std::size_t ClassicalTensor::flat(const std::vector<int>& idx) const {
  if (static_cast<int>(idx.size()) != rank_)
    throw std::invalid_argument("ClassicalTensor: index rank mismatch");
  std::size_t f = 0;
  for (int i : idx) {
    if (i < 0 || i >= n_) throw std::out_of_range("ClassicalTensor: index out of range");
    f = f * static_cast<std::size_t>(n_) + static_cast<std::size_t>(i);
  }
  return f;
}

TrigPoly& ClassicalTensor::at(const std::vector<int>& idx) { return comp_[flat(idx)]; }
const TrigPoly& ClassicalTensor::at(const std::vector<int>& idx) const { return comp_[flat(idx)]; }

ClassicalTensor ClassicalTensor::operator+(const ClassicalTensor& o) const {
  if (n_ != o.n_ || rank_ != o.rank_) throw std::invalid_argument("ClassicalTensor: shape mismatch");
  ClassicalTensor out = *this;
  for (std::size_t i = 0; i < comp_.size(); ++i) out.comp_[i] = out.comp_[i] + o.comp_[i];
  return out;
}

ClassicalTensor ClassicalTensor::operator-(const ClassicalTensor& o) const {
  return *this + o.scaled(-1.0);
}

ClassicalTensor ClassicalTensor::scaled(cdbl s) const {
  ClassicalTensor out = *this;
  for (auto& c : out.comp_) c = c.scaled(s);
  return out;
}

ClassicalTensor ClassicalTensor::antisymmetrized() const {
  if (rank_ != 2) throw std::invalid_argument("antisymmetrized: rank-2 tensors only");
  ClassicalTensor out(n_, 2);
  for (int i = 0; i < n_; ++i)
    for (int j = 0; j < n_; ++j)
      out.at({i, j}) = (at({i, j}) - at({j, i})).scaled(0.5);
  return out;
}

double ClassicalTensor::norm2_at(const std::array<double, 4>& x) const {
  double acc = 0.0;
  for (const auto& c : comp_) acc += std::norm(c.eval(x));
  return acc;
}

double ClassicalTensor::max_abs_coeff_diff(const ClassicalTensor& o) const {
  if (n_ != o.n_ || rank_ != o.rank_) throw std::invalid_argument("ClassicalTensor: shape mismatch");
  double m = 0.0;
  for (std::size_t i = 0; i < comp_.size(); ++i) {
    const TrigPoly d = comp_[i] - o.comp_[i];
    for (const auto& [k, v] : d.terms()) {
      (void)k;
      m = std::max(m, std::abs(v));
    }
  }
  return m;
}

ClassicalTensor exterior_d(const ClassicalTensor& a) {
  if (a.rank() != 1) throw std::invalid_argument("exterior_d: covector fields only");
  const int n = a.dim();
  ClassicalTensor out(n, 2);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      out.at({i, j}) = (a.at({j}).derivative(i) - a.at({i}).derivative(j)).scaled(0.5);
  return out;
}

QuantizedForm QuantizedForm::zero(int n, int degree) { return QuantizedForm(n, degree); }

QuantizedForm QuantizedForm::function(TrigPoly a) {
  QuantizedForm f(a.dim(), 0);
  if (!a.empty()) f.words_.push_back(FormWord{cdbl(1.0, 0.0), std::move(a), {}});
  return f;
}

QuantizedForm QuantizedForm::dhat(TrigPoly a) {
  QuantizedForm f(a.dim(), 1);
  if (!a.empty())
    f.words_.push_back(FormWord{cdbl(1.0, 0.0), TrigPoly::constant(a.dim(), 1.0), {std::move(a)}});
  return f;
}

QuantizedForm QuantizedForm::operator+(const QuantizedForm& o) const {
  if (n_ != o.n_ || degree_ != o.degree_)
    throw std::invalid_argument("QuantizedForm: degree/dimension mismatch in sum");
  QuantizedForm out = *this;
  out.words_.insert(out.words_.end(), o.words_.begin(), o.words_.end());
  return out;
}

namespace {

// canonical words for dhat(d[0]) ... dhat(d[k-1]) * Mult(b), via
// dhat(a) b = dhat(ab) - a dhat(b) applied from the right
std::vector<FormWord> push_mult_right(int n, const std::vector<TrigPoly>& d, const TrigPoly& b) {
  if (d.empty()) return {FormWord{cdbl(1.0, 0.0), b, {}}};
  std::vector<TrigPoly> rest(d.begin(), d.end() - 1);
  const TrigPoly& last = d.back();

  std::vector<FormWord> out;
  // term 1: prefix stays, last factor absorbs b
  {
    FormWord w;
    w.a0 = TrigPoly::constant(n, 1.0);
    w.dparts = rest;
    w.dparts.push_back(last * b);
    out.push_back(std::move(w));
  }
  // term 2: -(prefix * Mult(last)) dhat(b), recursively canonicalized
  for (auto w : push_mult_right(n, rest, last)) {
    w.coeff *= cdbl(-1.0, 0.0);
    w.dparts.push_back(b);
    out.push_back(std::move(w));
  }
  return out;
}

bool is_plain_constant(const TrigPoly& p, cdbl& value) {
  if (p.terms().size() != 1) return false;
  const auto& [k, v] = *p.terms().begin();
  if (k != Mode{0, 0, 0, 0}) return false;
  value = v;
  return true;
}

} // namespace

QuantizedForm QuantizedForm::operator*(const QuantizedForm& o) const {
  if (n_ != o.n_) throw std::invalid_argument("QuantizedForm: dimension mismatch in product");
  QuantizedForm out(n_, degree_ + o.degree_);
  for (const auto& w1 : words_) {
    for (const auto& w2 : o.words_) {
      cdbl cval;
      if (is_plain_constant(w2.a0, cval) || w1.dparts.empty()) {
        // no rewriting needed: either the middle multiplier is scalar or
        // there is no dhat factor to push it through
        FormWord w;
        w.coeff = w1.coeff * w2.coeff;
        w.a0 = w1.dparts.empty() ? (w1.a0 * w2.a0) : w1.a0.scaled(cval);
        w.dparts = w1.dparts;
        w.dparts.insert(w.dparts.end(), w2.dparts.begin(), w2.dparts.end());
        if (!w.a0.empty()) out.words_.push_back(std::move(w));
        continue;
      }
      for (auto p : push_mult_right(n_, w1.dparts, w2.a0)) {
        FormWord w;
        w.coeff = w1.coeff * w2.coeff * p.coeff;
        w.a0 = w1.a0 * p.a0;
        w.dparts = std::move(p.dparts);
        w.dparts.insert(w.dparts.end(), w2.dparts.begin(), w2.dparts.end());
        if (!w.a0.empty()) out.words_.push_back(std::move(w));
      }
    }
  }
  return out;
}

QuantizedForm QuantizedForm::scaled(cdbl s) const {
  QuantizedForm out = *this;
  if (s == cdbl(0.0, 0.0)) {
    out.words_.clear();
    return out;
  }
  for (auto& w : out.words_) w.coeff *= s;
  return out;
}

QuantizedForm QuantizedForm::quantized_d() const {
  QuantizedForm out(n_, degree_ + 1);
  for (const auto& w : words_) {
    cdbl cval;
    if (is_plain_constant(w.a0, cval)) continue; // dhat of a constant vanishes
    FormWord v;
    v.coeff = w.coeff;
    v.a0 = TrigPoly::constant(n_, 1.0);
    v.dparts.push_back(w.a0);
    v.dparts.insert(v.dparts.end(), w.dparts.begin(), w.dparts.end());
    out.words_.push_back(std::move(v));
  }
  return out;
}

ModeOperator QuantizedForm::op() const {
  ModeOperator acc = ModeOperator::zero(n_);
  for (const auto& w : words_) {
    ModeOperator cur = ModeOperator::mult(w.a0);
    for (const auto& a : w.dparts) cur = cur * ModeOperator::dhat(a);
    acc = acc + cur.scaled(w.coeff);
  }
  return acc;
}

TorusSymbol dhat_symbol(const TrigPoly& a) {
  const int n = a.dim();
  const int d = spinor_rank(n);
  TorusSymbol sym(n, -1, d);
  for (int mu = 0; mu < n; ++mu) {
    const TrigPoly da = a.derivative(mu);
    if (da.empty()) continue;
    SymbolTerm t;
    t.x_part = da;
    t.fiber = gamma_mat(n, mu);
    sym.add_term(std::move(t));
    for (int nu = 0; nu < n; ++nu) {
      SymbolTerm s;
      s.x_part = da;
      s.dir_pow[static_cast<std::size_t>(mu)] += 1;
      s.dir_pow[static_cast<std::size_t>(nu)] += 1;
      s.fiber = -gamma_mat(n, nu);
      sym.add_term(std::move(s));
    }
  }
  return sym;
}

TorusSymbol QuantizedForm::symbol() const {
  const int d = spinor_rank(n_);
  TorusSymbol acc(n_, -degree_, d);
  for (const auto& w : words_) {
    TorusSymbol cur(n_, 0, d);
    SymbolTerm head;
    head.x_part = w.a0.scaled(w.coeff);
    head.fiber = Eigen::MatrixXcd::Identity(d, d);
    cur.add_term(std::move(head));
    for (const auto& a : w.dparts) cur = cur * dhat_symbol(a);
    acc = acc + cur;
  }
  return acc;
}

ClassicalTensor QuantizedForm::classical_part() const {
  ClassicalTensor out(n_, degree_);
  std::vector<int> idx(static_cast<std::size_t>(degree_), 0);
  for (const auto& w : words_) {
    // iterate over all index tuples (mu_1..mu_k)
    std::fill(idx.begin(), idx.end(), 0);
    while (true) {
      TrigPoly term = w.a0.scaled(w.coeff);
      for (int r = 0; r < degree_; ++r)
        term = term * w.dparts[static_cast<std::size_t>(r)].derivative(idx[static_cast<std::size_t>(r)]);
      out.at(idx) = out.at(idx) + term;
      int r = degree_ - 1;
      for (; r >= 0; --r) {
        if (++idx[static_cast<std::size_t>(r)] < n_) break;
        idx[static_cast<std::size_t>(r)] = 0;
      }
      if (r < 0) break;
    }
  }
  return out;
}

QuantizedForm quantized_curvature(const std::vector<std::pair<TrigPoly, TrigPoly>>& pairs) {
  if (pairs.empty()) throw std::invalid_argument("quantized_curvature: empty connection data");
  const int n = pairs.front().first.dim();
  QuantizedForm theta = QuantizedForm::zero(n, 2);
  for (const auto& [a, b] : pairs) {
    if (a.dim() != n || b.dim() != n)
      throw std::invalid_argument("quantized_curvature: dimension mismatch");
    theta = theta + QuantizedForm::dhat(a) * QuantizedForm::dhat(b) +
            QuantizedForm::function(a * a) * (QuantizedForm::dhat(b) * QuantizedForm::dhat(b));
  }
  return theta;
}

} // namespace nwb::qc
