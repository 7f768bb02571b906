#include "nwb/qc/trig_poly.hpp"

#include <cmath>
#include <cstdlib>
#include <stdexcept>

namespace nwb::qc {

namespace {
void check_dim(int n) {
  if (n < 1 || n > 4) throw std::invalid_argument("TrigPoly: n must be 1..4");
}
Mode negated(const Mode& k) { return {-k[0], -k[1], -k[2], -k[3]}; }
Mode added(const Mode& a, const Mode& b) {
  return {a[0] + b[0], a[1] + b[1], a[2] + b[2], a[3] + b[3]};
}
} // namespace

TrigPoly::TrigPoly(int n) : n_(n) { check_dim(n); }

TrigPoly TrigPoly::constant(int n, cdbl v) {
  TrigPoly p(n);
  p.add_term({0, 0, 0, 0}, v);
  return p;
}

TrigPoly TrigPoly::mode(int n, const Mode& k, cdbl v) {
  TrigPoly p(n);
  for (int j = n; j < 4; ++j)
    if (k[static_cast<std::size_t>(j)] != 0)
      throw std::invalid_argument("TrigPoly::mode: mode component beyond dimension");
  p.add_term(k, v);
  return p;
}

cdbl TrigPoly::coeff(const Mode& k) const {
  const auto it = c_.find(k);
  return it == c_.end() ? cdbl(0.0, 0.0) : it->second;
}

void TrigPoly::add_term(const Mode& k, cdbl v) {
  if (v == cdbl(0.0, 0.0)) return;
  auto [it, inserted] = c_.emplace(k, v);
  if (!inserted) {
    it->second += v;
    if (it->second == cdbl(0.0, 0.0)) c_.erase(it);
  }
}

TrigPoly TrigPoly::operator+(const TrigPoly& o) const {
  if (n_ != o.n_) throw std::invalid_argument("TrigPoly: dimension mismatch");
  TrigPoly out = *this;
  for (const auto& [k, v] : o.c_) out.add_term(k, v);
  return out;
}

TrigPoly TrigPoly::operator-(const TrigPoly& o) const { return *this + o.scaled(-1.0); }

TrigPoly TrigPoly::operator*(const TrigPoly& o) const {
  if (n_ != o.n_) throw std::invalid_argument("TrigPoly: dimension mismatch");
  TrigPoly out(n_);
  for (const auto& [ka, va] : c_)
    for (const auto& [kb, vb] : o.c_) out.add_term(added(ka, kb), va * vb);
  return out;
}

TrigPoly TrigPoly::scaled(cdbl s) const {
  TrigPoly out(n_);
  if (s == cdbl(0.0, 0.0)) return out;
  for (const auto& [k, v] : c_) out.add_term(k, s * v);
  return out;
}

TrigPoly TrigPoly::conjugated() const {
  TrigPoly out(n_);
  for (const auto& [k, v] : c_) out.add_term(negated(k), std::conj(v));
  return out;
}

TrigPoly TrigPoly::derivative(int mu) const {
  if (mu < 0 || mu >= n_) throw std::invalid_argument("TrigPoly::derivative: bad direction");
  TrigPoly out(n_);
  for (const auto& [k, v] : c_)
    out.add_term(k, cdbl(0.0, static_cast<double>(k[static_cast<std::size_t>(mu)])) * v);
  return out;
}

cdbl TrigPoly::eval(const std::array<double, 4>& x) const {
  cdbl acc(0.0, 0.0);
  for (const auto& [k, v] : c_) {
    double phase = 0.0;
    for (int j = 0; j < n_; ++j)
      phase += static_cast<double>(k[static_cast<std::size_t>(j)]) * x[static_cast<std::size_t>(j)];
    acc += v * cdbl(std::cos(phase), std::sin(phase));
  }
  return acc;
}

bool TrigPoly::is_real(double tol) const {
  for (const auto& [k, v] : c_)
    if (std::abs(v - std::conj(coeff(negated(k)))) > tol) return false;
  return true;
}

int TrigPoly::band_linf() const {
  int b = 0;
  for (const auto& [k, v] : c_) {
    (void)v;
    for (int j = 0; j < n_; ++j) b = std::max(b, std::abs(k[static_cast<std::size_t>(j)]));
  }
  return b;
}

} // namespace nwb::qc
