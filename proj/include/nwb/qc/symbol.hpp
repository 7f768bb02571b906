#pragma once

#include "nwb/qc/trig_poly.hpp"

#include <Eigen/Dense>

#include <vector>

// Homogeneous symbols on T^n: finite sums of terms f(x) * xihat^e * M * |xi|^order
// with trig-polynomial x-dependence, a monomial in the unit covector
// components, and a constant matrix fiber. Closed under products (orders
// add), which is all the calculus needs at leading order.

namespace nwb::qc {

struct SymbolTerm {
  TrigPoly x_part;
  std::array<int, 4> dir_pow{0, 0, 0, 0}; // monomial exponents in xihat
  Eigen::MatrixXcd fiber;                 // d x d
};

class TorusSymbol {
public:
  TorusSymbol(int n, int order, int fiber_dim);
  static TorusSymbol scalar_multiplier(int n, int order, TrigPoly f, int fiber_dim = 1);

  int dim() const { return n_; }
  int order() const { return order_; }
  int fiber_dim() const { return d_; }
  const std::vector<SymbolTerm>& terms() const { return terms_; }

  void add_term(SymbolTerm t);
  TorusSymbol operator+(const TorusSymbol& o) const;
  TorusSymbol operator*(const TorusSymbol& o) const; // leading-order product
  TorusSymbol scaled(cdbl s) const;

  // pointwise value at (x, unit covector u), including nothing from |xi|^order
  Eigen::MatrixXcd eval_on_sphere(const std::array<double, 4>& x,
                                  const std::array<double, 4>& u) const;

private:
  int n_, order_, d_;
  std::vector<SymbolTerm> terms_;
};

// exact integral of xihat^e over S^{n-1} (zero when any exponent is odd)
double sphere_monomial_integral(int n, const std::array<int, 4>& e);

// (1/(2pi)^n) * Int_{T^n} dx Int_{S^{n-1}} tr sigma; requires order == -n.
double wodzicki_residue(const TorusSymbol& sigma);

// Residue with the von Neumann trace realized as a weighted average over a
// twist family: sum_j w_j * wodzicki_residue(sigma_j), weights summing to 1.
double gamma_residue(const std::vector<std::pair<double, TorusSymbol>>& family);

} // namespace nwb::qc
