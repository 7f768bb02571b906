#pragma once

#include <array>
#include <complex>
#include <map>

// Trigonometric polynomials on T^n = (R/2piZ)^n: finite Fourier tables
// indexed by integer mode vectors. These are the coefficient functions of
// every operator in the quantized calculus, so products are exact
// convolutions and derivatives are exact mode rescalings.

namespace nwb::qc {

using Mode = std::array<int, 4>; // trailing entries 0 when n < 4
using cdbl = std::complex<double>;

class TrigPoly {
public:
  explicit TrigPoly(int n = 1);
  static TrigPoly constant(int n, cdbl v);
  static TrigPoly mode(int n, const Mode& k, cdbl v); // v e^{i<k,x>}

  int dim() const { return n_; }
  cdbl coeff(const Mode& k) const;
  void add_term(const Mode& k, cdbl v); // accumulates, drops exact zeros
  const std::map<Mode, cdbl>& terms() const { return c_; }
  bool empty() const { return c_.empty(); }

  TrigPoly operator+(const TrigPoly& o) const;
  TrigPoly operator-(const TrigPoly& o) const;
  TrigPoly operator*(const TrigPoly& o) const; // convolution
  TrigPoly scaled(cdbl s) const;
  TrigPoly conjugated() const;     // pointwise complex conjugate a*(x)
  TrigPoly derivative(int mu) const;

  cdbl eval(const std::array<double, 4>& x) const;
  bool is_real(double tol = 1e-12) const; // a == a*
  int band_linf() const; // max |k|_inf over support, 0 when empty

private:
  int n_;
  std::map<Mode, cdbl> c_;
};

} // namespace nwb::qc
