#pragma once

#include "nwb/gauge/field.hpp"

#include <Eigen/Dense>

#include <array>
#include <cstddef>
#include <utility>
#include <vector>

// Discrete two-forms with anti-hermitian r x r values, one matrix per site and
// unordered plane {mu,nu}. Continuum normalization throughout: components are
// per unit coordinate area, integrals weight each site by a^4.

namespace nwb::gauge {

// planes enumerated (0,1),(0,2),(0,3),(1,2),(1,3),(2,3)
int plane_index(int mu, int nu);
std::pair<int, int> plane_dirs(int p);

struct TwoFormField {
  int rank = 1;
  int L = 0;
  // comp[p][site] stores F_{mu nu} for the ordered pair of plane p
  std::array<std::vector<Eigen::MatrixXcd>, 6> comp;

  TwoFormField() = default;
  TwoFormField(int extent, int r);

  Lattice4 lattice() const { return Lattice4(L); }
  double spacing() const;

  // signed component, F_{nu mu} = -F_{mu nu}; mu == nu gives zero
  Eigen::MatrixXcd at(std::size_t site, int mu, int nu) const;

  TwoFormField& operator+=(const TwoFormField& other);
  TwoFormField& operator-=(const TwoFormField& other);
  TwoFormField scaled(double c) const;

  // largest deviation of any component from anti-hermiticity
  double antihermiticity_defect() const;
};

// Field strength from clover-averaged principal logarithms: for each plane the
// four oriented plaquette leaves through a site are logged individually,
// averaged, and scaled by 1/a^2. Throws if any leaf has an eigenphase at the
// branch cut |theta| >= pi (the discretization cannot represent that flux
// density faithfully, so this is a hard error rather than a wrap).
TwoFormField curvature(const GaugeField& u);

// Hodge star for orientation e0123 positive; an involution on two-forms.
TwoFormField hodge_star(const TwoFormField& f);

// self-dual and anti-self-dual parts, F = F_plus + F_minus
std::pair<TwoFormField, TwoFormField> hodge_split(const TwoFormField& f);

// integral of sum_{mu<nu} |F_{mu nu}|_HS^2 over the torus (a^4 per site)
double l2_norm2(const TwoFormField& f);

// |F_plus| / |F|, zero for the zero form; vanishes iff F is anti-self-dual
double asd_defect(const TwoFormField& f);

// point on S^2 selecting a compatible complex structure; n = (1,0,0) is the
// standard one with Kaehler form e01 + e23
struct ComplexStructureJ {
  std::array<double, 3> n{1.0, 0.0, 0.0};

  ComplexStructureJ() = default;
  explicit ComplexStructureJ(const std::array<double, 3>& dir);
  static ComplexStructureJ standard() { return ComplexStructureJ(); }
};

// L^2 norms of the two pieces of the self-dual part of F relative to J:
// defect_02 is the (0,2)+(2,0) component (self-dual, orthogonal to omega_J),
// defect_omega the omega_J component. Both zero iff F is (1,1) and primitive,
// i.e. anti-self-dual.
struct Defects11 {
  double defect_02 = 0.0;
  double defect_omega = 0.0;
};

Defects11 is_11_and_primitive(const TwoFormField& f, const ComplexStructureJ& j);

} // namespace nwb::gauge
