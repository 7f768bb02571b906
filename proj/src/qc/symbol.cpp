#include "nwb/qc/symbol.hpp"

#include <cmath>
#include <stdexcept>

namespace nwb::qc {

TorusSymbol::TorusSymbol(int n, int order, int fiber_dim)
    : n_(n), order_(order), d_(fiber_dim) {
  if (n < 1 || n > 4) throw std::invalid_argument("TorusSymbol: n must be 1..4");
  if (order > 0) throw std::invalid_argument("TorusSymbol: order must be <= 0");
  if (fiber_dim < 1) throw std::invalid_argument("TorusSymbol: fiber dim must be >= 1");
}

TorusSymbol TorusSymbol::scalar_multiplier(int n, int order, TrigPoly f, int fiber_dim) {
  TorusSymbol s(n, order, fiber_dim);
  SymbolTerm t;
  t.x_part = std::move(f);
  t.fiber = Eigen::MatrixXcd::Identity(fiber_dim, fiber_dim);
  s.add_term(std::move(t));
  return s;
}

void TorusSymbol::add_term(SymbolTerm t) {
  if (t.x_part.dim() != n_) throw std::invalid_argument("TorusSymbol: term dimension mismatch");
  if (t.fiber.rows() != d_ || t.fiber.cols() != d_)
    throw std::invalid_argument("TorusSymbol: term fiber size mismatch");
  for (int j = n_; j < 4; ++j)
    if (t.dir_pow[static_cast<std::size_t>(j)] != 0)
      throw std::invalid_argument("TorusSymbol: direction exponent beyond dimension");
  if (t.x_part.empty()) return;
  terms_.push_back(std::move(t));
}

TorusSymbol TorusSymbol::operator+(const TorusSymbol& o) const {
  if (n_ != o.n_ || order_ != o.order_ || d_ != o.d_)
    throw std::invalid_argument("TorusSymbol: incompatible sum");
  TorusSymbol out = *this;
  for (const auto& t : o.terms_) out.add_term(t);
  return out;
}

TorusSymbol TorusSymbol::operator*(const TorusSymbol& o) const {
  if (n_ != o.n_ || d_ != o.d_) throw std::invalid_argument("TorusSymbol: incompatible product");
  TorusSymbol out(n_, order_ + o.order_, d_);
  for (const auto& a : terms_) {
    for (const auto& b : o.terms_) {
      SymbolTerm t;
      t.x_part = a.x_part * b.x_part;
      for (int j = 0; j < 4; ++j)
        t.dir_pow[static_cast<std::size_t>(j)] =
            a.dir_pow[static_cast<std::size_t>(j)] + b.dir_pow[static_cast<std::size_t>(j)];
      t.fiber = a.fiber * b.fiber;
      out.add_term(std::move(t));
    }
  }
  return out;
}

TorusSymbol TorusSymbol::scaled(cdbl s) const {
  TorusSymbol out(n_, order_, d_);
  for (const auto& t : terms_) {
    SymbolTerm u = t;
    u.x_part = u.x_part.scaled(s);
    out.add_term(std::move(u));
  }
  return out;
}

Eigen::MatrixXcd TorusSymbol::eval_on_sphere(const std::array<double, 4>& x,
                                             const std::array<double, 4>& u) const {
  Eigen::MatrixXcd acc = Eigen::MatrixXcd::Zero(d_, d_);
  for (const auto& t : terms_) {
    double dir = 1.0;
    for (int j = 0; j < n_; ++j)
      for (int p = 0; p < t.dir_pow[static_cast<std::size_t>(j)]; ++p)
        dir *= u[static_cast<std::size_t>(j)];
    acc += t.x_part.eval(x) * dir * t.fiber;
  }
  return acc;
}

double sphere_monomial_integral(int n, const std::array<int, 4>& e) {
  if (n < 1 || n > 4) throw std::invalid_argument("sphere_monomial_integral: n must be 1..4");
  double shalf = 0.0;
  for (int j = 0; j < n; ++j) {
    const int ej = e[static_cast<std::size_t>(j)];
    if (ej < 0) throw std::invalid_argument("sphere_monomial_integral: negative exponent");
    if (ej % 2 == 1) return 0.0;
    shalf += 0.5 * static_cast<double>(ej);
  }
  for (int j = n; j < 4; ++j)
    if (e[static_cast<std::size_t>(j)] != 0)
      throw std::invalid_argument("sphere_monomial_integral: exponent beyond dimension");
  if (n == 1) {
    // S^0 = {-1, +1} with counting measure; even powers integrate to 2
    return 2.0;
  }
  double num = 1.0;
  for (int j = 0; j < n; ++j)
    num *= std::tgamma(0.5 * (static_cast<double>(e[static_cast<std::size_t>(j)]) + 1.0));
  return 2.0 * num / std::tgamma(shalf + 0.5 * static_cast<double>(n));
}

double wodzicki_residue(const TorusSymbol& sigma) {
  if (sigma.order() != -sigma.dim())
    throw std::invalid_argument("wodzicki_residue: symbol order must be -n");
  // x-average of a trig polynomial is its zero coefficient; the (2pi)^n
  // volume cancels the prefactor exactly
  cdbl acc(0.0, 0.0);
  for (const auto& t : sigma.terms())
    acc += t.x_part.coeff({0, 0, 0, 0}) * t.fiber.trace() *
           sphere_monomial_integral(sigma.dim(), t.dir_pow);
  if (std::abs(acc.imag()) > 1e-10 * (1.0 + std::abs(acc.real())))
    throw std::domain_error("wodzicki_residue: non-real residue (symbol not self-adjoint?)");
  return acc.real();
}

double gamma_residue(const std::vector<std::pair<double, TorusSymbol>>& family) {
  if (family.empty()) throw std::invalid_argument("gamma_residue: empty family");
  double wsum = 0.0, acc = 0.0;
  for (const auto& [w, sig] : family) {
    if (!(w > 0.0)) throw std::invalid_argument("gamma_residue: weights must be > 0");
    wsum += w;
    acc += w * wodzicki_residue(sig);
  }
  if (std::abs(wsum - 1.0) > 1e-12)
    throw std::invalid_argument("gamma_residue: weights must sum to 1");
  return acc;
}

} // namespace nwb::qc
