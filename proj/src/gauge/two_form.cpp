#include "nwb/gauge/two_form.hpp"

#include "u1_clover.hpp"

#include <cmath>
#include <complex>
#include <stdexcept>

namespace nwb::gauge {

namespace {

constexpr double kPi = 3.14159265358979323846;
using cdbl = std::complex<double>;

constexpr int kPlaneDirs[6][2] = {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}};

// hodge star on the plane basis for orientation e0123: star maps plane p to
// plane 5-p (its complement) with the sign of the permutation (p dirs, dual dirs)
constexpr double kStarSign[6] = {+1.0, -1.0, +1.0, +1.0, -1.0, +1.0};

// principal log of a unitary matrix through its eigenphases
Eigen::MatrixXcd unitary_log(const Eigen::MatrixXcd& u) {
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(u);
  if (es.info() != Eigen::Success)
    throw std::runtime_error("curvature: eigensolver failed on a plaquette leaf");
  Eigen::VectorXcd logs(u.rows());
  for (Eigen::Index i = 0; i < u.rows(); ++i)
    logs(i) = cdbl(0.0, detail::principal_angle(std::arg(es.eigenvalues()(i))));
  Eigen::MatrixXcd v = es.eigenvectors();
  return v * logs.asDiagonal() * v.inverse();
}

} // namespace

int plane_index(int mu, int nu) {
  for (int p = 0; p < 6; ++p)
    if (kPlaneDirs[p][0] == mu && kPlaneDirs[p][1] == nu) return p;
  throw std::invalid_argument("plane_index: need 0 <= mu < nu <= 3");
}

std::pair<int, int> plane_dirs(int p) {
  if (p < 0 || p >= 6) throw std::invalid_argument("plane_dirs: plane out of range");
  return {kPlaneDirs[p][0], kPlaneDirs[p][1]};
}

TwoFormField::TwoFormField(int extent, int r) : rank(r), L(extent) {
  if (r < 1) throw std::invalid_argument("TwoFormField: rank must be positive");
  Lattice4 lat(L);
  for (int p = 0; p < 6; ++p)
    comp[p].assign(lat.nsites(), Eigen::MatrixXcd::Zero(rank, rank));
}

double TwoFormField::spacing() const { return 2.0 * kPi / L; }

Eigen::MatrixXcd TwoFormField::at(std::size_t site, int mu, int nu) const {
  if (mu == nu) return Eigen::MatrixXcd::Zero(rank, rank);
  if (mu < nu) return comp[plane_index(mu, nu)][site];
  return -comp[plane_index(nu, mu)][site];
}

TwoFormField& TwoFormField::operator+=(const TwoFormField& other) {
  if (other.L != L || other.rank != rank)
    throw std::invalid_argument("TwoFormField: shape mismatch in +=");
  for (int p = 0; p < 6; ++p)
    for (std::size_t s = 0; s < comp[p].size(); ++s) comp[p][s] += other.comp[p][s];
  return *this;
}

TwoFormField& TwoFormField::operator-=(const TwoFormField& other) {
  if (other.L != L || other.rank != rank)
    throw std::invalid_argument("TwoFormField: shape mismatch in -=");
  for (int p = 0; p < 6; ++p)
    for (std::size_t s = 0; s < comp[p].size(); ++s) comp[p][s] -= other.comp[p][s];
  return *this;
}

TwoFormField TwoFormField::scaled(double c) const {
  TwoFormField g = *this;
  for (int p = 0; p < 6; ++p)
    for (auto& m : g.comp[p]) m *= c;
  return g;
}

double TwoFormField::antihermiticity_defect() const {
  double worst = 0.0;
  for (int p = 0; p < 6; ++p)
    for (const auto& m : comp[p]) {
      double dev = (m + m.adjoint()).cwiseAbs().maxCoeff();
      if (dev > worst) worst = dev;
    }
  return worst;
}

TwoFormField curvature(const GaugeField& u) {
  Lattice4 lat(u.L);
  const double a = u.spacing();
  const double inv4a2 = 1.0 / (4.0 * a * a);
  TwoFormField f(u.L, u.rank);

  if (u.rank == 1) {
    // abelian fast path: each leaf log is just the wrapped angle sum
    auto fv = detail::u1_clover(lat, detail::link_angles(u), a);
    for (int p = 0; p < 6; ++p)
      for (std::size_t s = 0; s < lat.nsites(); ++s) f.comp[p][s](0, 0) = cdbl(0.0, fv[p][s]);
    return f;
  }

  for (int p = 0; p < 6; ++p) {
    auto [mu, nu] = plane_dirs(p);
    for (std::size_t s = 0; s < lat.nsites(); ++s) {
      std::size_t sxu = lat.shift(s, mu, +1), sxd = lat.shift(s, mu, -1);
      std::size_t syu = lat.shift(s, nu, +1), syd = lat.shift(s, nu, -1);
      std::size_t sxdyu = lat.shift(sxd, nu, +1), sxdyd = lat.shift(sxd, nu, -1);
      std::size_t sxuyd = lat.shift(sxu, nu, -1);
      const auto& um = u.link[mu];
      const auto& un = u.link[nu];
      Eigen::MatrixXcd leaf1 = um[s] * un[sxu] * um[syu].adjoint() * un[s].adjoint();
      Eigen::MatrixXcd leaf2 = un[s] * um[sxdyu].adjoint() * un[sxd].adjoint() * um[sxd];
      Eigen::MatrixXcd leaf3 =
          um[sxd].adjoint() * un[sxdyd].adjoint() * um[sxdyd] * un[syd];
      Eigen::MatrixXcd leaf4 = un[syd].adjoint() * um[syd] * un[sxuyd] * um[s].adjoint();
      Eigen::MatrixXcd sum =
          unitary_log(leaf1) + unitary_log(leaf2) + unitary_log(leaf3) + unitary_log(leaf4);
      sum *= inv4a2;
      // logs of unitaries are anti-hermitian up to roundoff; make it exact
      f.comp[p][s] = 0.5 * (sum - sum.adjoint().eval());
    }
  }
  return f;
}

TwoFormField hodge_star(const TwoFormField& f) {
  TwoFormField g(f.L, f.rank);
  for (int p = 0; p < 6; ++p)
    for (std::size_t s = 0; s < f.comp[p].size(); ++s)
      g.comp[p][s] = kStarSign[p] * f.comp[5 - p][s];
  return g;
}

std::pair<TwoFormField, TwoFormField> hodge_split(const TwoFormField& f) {
  TwoFormField star = hodge_star(f);
  TwoFormField plus = f, minus = f;
  for (int p = 0; p < 6; ++p)
    for (std::size_t s = 0; s < f.comp[p].size(); ++s) {
      plus.comp[p][s] = 0.5 * (f.comp[p][s] + star.comp[p][s]);
      minus.comp[p][s] = 0.5 * (f.comp[p][s] - star.comp[p][s]);
    }
  return {plus, minus};
}

double l2_norm2(const TwoFormField& f) {
  const double a = f.spacing();
  const double dvol = a * a * a * a;
  double total = 0.0;
  for (int p = 0; p < 6; ++p)
    for (const auto& m : f.comp[p]) total += m.squaredNorm();
  return total * dvol;
}

double asd_defect(const TwoFormField& f) {
  double n2 = l2_norm2(f);
  if (n2 == 0.0) return 0.0;
  auto [plus, minus] = hodge_split(f);
  return std::sqrt(l2_norm2(plus) / n2);
}

ComplexStructureJ::ComplexStructureJ(const std::array<double, 3>& dir) : n(dir) {
  double n2 = n[0] * n[0] + n[1] * n[1] + n[2] * n[2];
  if (std::abs(n2 - 1.0) > 1e-12)
    throw std::invalid_argument("ComplexStructureJ: direction must be a unit vector");
}

Defects11 is_11_and_primitive(const TwoFormField& f, const ComplexStructureJ& j) {
  // expand the self-dual part in the basis b1 = e01+e23, b2 = e02-e13,
  // b3 = e03+e12; the Kaehler form of J is sum_i n_i b_i and the (0,2)+(2,0)
  // piece is the orthogonal complement inside the self-dual bundle
  const double a = f.spacing();
  const double dvol = a * a * a * a;
  double omega2 = 0.0, perp2 = 0.0;
  const std::size_t nsites = f.comp[0].size();
  for (std::size_t s = 0; s < nsites; ++s) {
    Eigen::MatrixXcd c1 = f.comp[plane_index(0, 1)][s] + f.comp[plane_index(2, 3)][s];
    Eigen::MatrixXcd c2 = f.comp[plane_index(0, 2)][s] - f.comp[plane_index(1, 3)][s];
    Eigen::MatrixXcd c3 = f.comp[plane_index(0, 3)][s] + f.comp[plane_index(1, 2)][s];
    Eigen::MatrixXcd comega = j.n[0] * c1 + j.n[1] * c2 + j.n[2] * c3;
    double csum = c1.squaredNorm() + c2.squaredNorm() + c3.squaredNorm();
    double co = comega.squaredNorm();
    omega2 += co;
    perp2 += csum - co;
  }
  // each basis form b_i has pointwise norm 2, hence the factor 1/2 turning
  // coefficient norms into form norms; defect_02^2 + defect_omega^2 = |F_plus|^2
  Defects11 d;
  d.defect_omega = std::sqrt(std::max(0.0, 0.5 * omega2 * dvol));
  d.defect_02 = std::sqrt(std::max(0.0, 0.5 * perp2 * dvol));
  return d;
}

} // namespace nwb::gauge
