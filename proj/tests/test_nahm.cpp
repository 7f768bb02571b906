#include "doctest.h"

#include "nwb/nahm/bundle.hpp"
#include "nwb/nahm/connection.hpp"
#include "nwb/nahm/dirac.hpp"
#include "nwb/nahm/eigs.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

using namespace nwb;
using nahm::cdbl;

namespace {

constexpr double pi = 3.14159265358979323846;

std::array<std::array<int, 4>, 4> flux_blocks(int k01, int k23) {
  std::array<std::array<int, 4>, 4> k{};
  k[0][1] = k01; k[1][0] = -k01;
  k[2][3] = k23; k[3][2] = -k23;
  return k;
}

gauge::GaugeField unit_flux(int L) { return gauge::constant_flux_u1(L, flux_blocks(1, -1)); }

std::vector<cdbl> random_spinor(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<cdbl> v(n);
  for (auto& z : v) z = cdbl(u(rng), u(rng));
  return v;
}

cdbl dot(const std::vector<cdbl>& a, const std::vector<cdbl>& b) {
  cdbl s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += std::conj(a[i]) * b[i];
  return s;
}

// the L=4 unit-flux near-kernel sits at 0.3756 with the next level at
// 0.794, so the default ceiling 0.2 / gap 5 thresholds need loosening
nahm::BundleOptions coarse_options() {
  nahm::BundleOptions opt;
  opt.ceiling = 0.45;
  opt.gap_min = 4.0;
  return opt;
}

// brute-force minimum of the closed-form dispersion over all Fourier modes
double free_min_sv(int L, const std::array<double, 4>& rho, double r) {
  double best = 1e300;
  std::array<int, 4> m{};
  for (m[0] = 0; m[0] < L; ++m[0])
    for (m[1] = 0; m[1] < L; ++m[1])
      for (m[2] = 0; m[2] < L; ++m[2])
        for (m[3] = 0; m[3] < L; ++m[3])
          best = std::min(best, nahm::free_wilson_sv(L, rho, r, m));
  return best;
}

} // namespace

TEST_CASE("lobpcg matches a dense eigensolve") {
  const int n = 48;
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  Eigen::MatrixXcd a(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) a(i, j) = cdbl(u(rng), u(rng));
  Eigen::MatrixXcd h = a.adjoint() * a;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(h);

  auto apply = [&](const cdbl* in, cdbl* out) {
    Eigen::Map<const Eigen::VectorXcd> x(in, n);
    Eigen::Map<Eigen::VectorXcd> y(out, n);
    y = h * x;
  };
  nahm::EigsOptions opt;
  opt.nev = 4;
  auto res = nahm::lobpcg_smallest(apply, n, opt);
  REQUIRE(res.values.size() == 4);
  for (int i = 0; i < 4; ++i) {
    CHECK(res.values(i) == doctest::Approx(es.eigenvalues()(i)).epsilon(1e-9));
    CHECK(res.residuals(i) <= opt.tol);
  }
  // orthonormal block
  Eigen::MatrixXcd g = res.vectors.adjoint() * res.vectors;
  CHECK((g - Eigen::MatrixXcd::Identity(4, 4)).norm() <= 1e-10);
}

TEST_CASE("lobpcg warm start does not lose accuracy and throws on a zero budget") {
  const int n = 40;
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  Eigen::MatrixXcd a(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) a(i, j) = cdbl(u(rng), u(rng));
  Eigen::MatrixXcd h = a.adjoint() * a;
  auto apply = [&](const cdbl* in, cdbl* out) {
    Eigen::Map<const Eigen::VectorXcd> x(in, n);
    Eigen::Map<Eigen::VectorXcd> y(out, n);
    y = h * x;
  };
  nahm::EigsOptions opt;
  opt.nev = 2;
  auto cold = nahm::lobpcg_smallest(apply, n, opt);
  auto warm = nahm::lobpcg_smallest(apply, n, opt, {}, cold.vectors);
  CHECK(warm.iterations <= cold.iterations);
  for (int i = 0; i < 2; ++i)
    CHECK(warm.values(i) == doctest::Approx(cold.values(i)).epsilon(1e-10));

  nahm::EigsOptions tiny = opt;
  tiny.maxit = 0;
  CHECK_THROWS_AS(nahm::lobpcg_smallest(apply, n, tiny), std::invalid_argument);
  tiny.maxit = 1; // a single iteration cannot reach 1e-8 from a random start
  CHECK_THROWS_AS(nahm::lobpcg_smallest(apply, n, tiny), std::runtime_error);
}

TEST_CASE("free-field singular values follow the lattice dispersion with fourfold degeneracy") {
  const int L = 3;
  const std::array<double, 4> rho{0.17, 0.31, 0.07, 0.43};
  auto u = gauge::identity_field(L, 1);
  auto d = nahm::build_twisted_dirac(u, rho, 1.0);

  Eigen::MatrixXcd a = d.dense_plus();
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(a);
  std::vector<double> got(svd.singularValues().data(),
                          svd.singularValues().data() + svd.singularValues().size());
  std::sort(got.begin(), got.end());

  std::vector<double> want;
  std::array<int, 4> m{};
  for (m[0] = 0; m[0] < L; ++m[0])
    for (m[1] = 0; m[1] < L; ++m[1])
      for (m[2] = 0; m[2] < L; ++m[2])
        for (m[3] = 0; m[3] < L; ++m[3]) {
          double s = nahm::free_wilson_sv(L, rho, 1.0, m);
          for (int c = 0; c < 4; ++c) want.push_back(s);
        }
  std::sort(want.begin(), want.end());
  REQUIRE(got.size() == want.size());
  for (std::size_t i = 0; i < got.size(); ++i)
    CHECK(got[i] == doctest::Approx(want[i]).epsilon(1e-10));
}

TEST_CASE("apply paths agree with the dense and sparse materializations") {
  auto u = unit_flux(4);
  auto d = nahm::build_twisted_dirac(u, {0.21, 0.43, 0.65, 0.87}, 1.0);
  const std::size_t n = d.dim();
  auto x = random_spinor(n, 5);

  Eigen::MatrixXcd a = d.dense_plus();
  Eigen::SparseMatrix<cdbl> s = d.sparse_plus();
  CHECK((Eigen::MatrixXcd(s) - a).norm() <= 1e-14 * a.norm());

  std::vector<cdbl> y(n);
  d.apply_plus(x.data(), y.data());
  Eigen::Map<const Eigen::VectorXcd> xm(x.data(), n);
  Eigen::Map<const Eigen::VectorXcd> ym(y.data(), n);
  CHECK((a * xm - ym).norm() <= 1e-12 * ym.norm());

  std::vector<cdbl> z(n);
  d.apply_minus(x.data(), z.data());
  Eigen::Map<const Eigen::VectorXcd> zm(z.data(), n);
  CHECK((a.adjoint() * xm - zm).norm() <= 1e-12 * zm.norm());
}

TEST_CASE("plus and minus applies are exact adjoints and the normal operators compose them") {
  auto u = unit_flux(4);
  auto d = nahm::build_twisted_dirac(u, {0.9, 0.1, 0.5, 0.3}, 0.8);
  const std::size_t n = d.dim();
  auto x = random_spinor(n, 21);
  auto v = random_spinor(n, 22);

  std::vector<cdbl> dx(n), dv(n);
  d.apply_plus(x.data(), dx.data());
  d.apply_minus(v.data(), dv.data());
  // <v, D+ x> = <D- v, x>
  cdbl lhs = dot(v, dx), rhs = dot(dv, x);
  CHECK(std::abs(lhs - rhs) <= 1e-12 * std::abs(lhs));

  std::vector<cdbl> scratch(n), nx(n), ref(n);
  d.normal_plus(x.data(), nx.data(), scratch.data());
  d.apply_plus(x.data(), scratch.data());
  d.apply_minus(scratch.data(), ref.data());
  double diff = 0.0;
  for (std::size_t i = 0; i < n; ++i) diff = std::max(diff, std::abs(nx[i] - ref[i]));
  CHECK(diff == 0.0); // same code path, bitwise

  d.normal_minus(x.data(), nx.data(), scratch.data());
  d.apply_minus(x.data(), scratch.data());
  d.apply_plus(scratch.data(), ref.data());
  diff = 0.0;
  for (std::size_t i = 0; i < n; ++i) diff = std::max(diff, std::abs(nx[i] - ref[i]));
  CHECK(diff == 0.0);
}

TEST_CASE("one full twist period is the harmonic gauge conjugation") {
  auto u = unit_flux(4);
  const std::array<double, 4> rho{0.12, 0.34, 0.56, 0.78};
  for (int j : {0, 2}) {
    auto shifted = rho;
    shifted[j] += 1.0;
    auto d0 = nahm::build_twisted_dirac(u, rho, 1.0);
    auto d1 = nahm::build_twisted_dirac(u, shifted, 1.0);
    const std::size_t n = d0.dim();
    auto x = random_spinor(n, 31 + j);

    // D(rho + e_j) x = g^* D(rho) g x with g the harmonic gauge phase
    auto phase = nahm::harmonic_gauge_phase(4, j);
    std::vector<cdbl> gx(n), t(n), want(n), got(n);
    auto conj_phase = phase;
    for (auto& z : conj_phase) z = std::conj(z);
    nahm::apply_site_phase(phase, x.data(), gx.data(), 2);
    d0.apply_plus(gx.data(), t.data());
    nahm::apply_site_phase(conj_phase, t.data(), want.data(), 2);
    d1.apply_plus(x.data(), got.data());
    double diff = 0.0, scale = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      diff = std::max(diff, std::abs(got[i] - want[i]));
      scale = std::max(scale, std::abs(want[i]));
    }
    CHECK(diff <= 1e-12 * scale);
  }
}

TEST_CASE("free preconditioner inverts the shifted free normal operator") {
  const int L = 4;
  const std::array<double, 4> rho{0.28, 0.64, 0.11, 0.52};
  const double shift = 0.25;
  auto u = gauge::identity_field(L, 1);
  auto d = nahm::build_twisted_dirac(u, rho, 1.0);
  nahm::FreePreconditioner pre(L, rho, 1.0, shift);
  REQUIRE(pre.dim() == d.dim());

  const std::size_t n = d.dim();
  auto x = random_spinor(n, 77);
  std::vector<cdbl> hx(n), scratch(n), back(n);
  d.normal_minus(x.data(), hx.data(), scratch.data());
  for (std::size_t i = 0; i < n; ++i) hx[i] += shift * x[i];
  pre.apply(hx.data(), back.data());
  double diff = 0.0;
  for (std::size_t i = 0; i < n; ++i) diff = std::max(diff, std::abs(back[i] - x[i]));
  CHECK(diff <= 1e-12);
}

TEST_CASE("min_singular reproduces the closed-form free dispersion") {
  // lowest mode at a half twist in one direction: sqrt(2 - sqrt(2))
  auto u = gauge::identity_field(4, 1);
  auto d = nahm::build_twisted_dirac(u, {0.5, 0.0, 0.0, 0.0}, 1.0);
  const double want = std::sqrt(2.0 - std::sqrt(2.0)); // 0.7653668647
  CHECK(nahm::min_singular(d) == doctest::Approx(want).epsilon(1e-8));
  CHECK(free_min_sv(4, {0.5, 0.0, 0.0, 0.0}, 1.0) == doctest::Approx(want).epsilon(1e-12));

  // fully twisted corner of the Picard torus
  auto d2 = nahm::build_twisted_dirac(u, {0.5, 0.5, 0.5, 0.5}, 1.0);
  const double want2 = free_min_sv(4, {0.5, 0.5, 0.5, 0.5}, 1.0);
  CHECK(want2 == doctest::Approx(1.836459).epsilon(1e-6));
  CHECK(nahm::min_singular(d2) == doctest::Approx(want2).epsilon(1e-8));

  // at the trivial twist the free operator is exactly singular
  auto d3 = nahm::build_twisted_dirac(u, {0.0, 0.0, 0.0, 0.0}, 1.0);
  CHECK(nahm::min_singular(d3) <= 1e-6);
}

TEST_CASE("min_singular is gauge invariant") {
  auto u = unit_flux(4);
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> dist(-pi, pi);
  gauge::Lattice4 lat(4);
  std::vector<Eigen::MatrixXcd> g(lat.nsites());
  for (auto& m : g) {
    m = Eigen::MatrixXcd(1, 1);
    m(0, 0) = std::polar(1.0, dist(rng));
  }
  auto ug = gauge::gauge_transformed(u, g);
  const std::array<double, 4> rho{0.21, 0.43, 0.65, 0.87};
  auto d0 = nahm::build_twisted_dirac(u, rho, 1.0);
  auto d1 = nahm::build_twisted_dirac(ug, rho, 1.0);
  double s0 = nahm::min_singular(d0);
  CHECK(std::abs(s0 - nahm::min_singular(d1)) <= 1e-10);
  // unit flux leaves one near-zero mode; its scale is a frozen reference
  CHECK(s0 == doctest::Approx(0.375576).epsilon(2e-5));
}

TEST_CASE("near-kernel of the unit-flux family has rank one with a frozen spectrum") {
  // dense-oracle values at L=6: lowest 0.170954, then a Landau level at
  // 0.536205 (doubly degenerate)
  auto u = unit_flux(6);
  auto d = nahm::build_twisted_dirac(u, {0.0, 0.0, 0.0, 0.0}, 1.0);
  nahm::BundleOptions opt;
  auto scan = nahm::scan_kernel_rank(d, opt);
  CHECK(scan.rank == 1);
  REQUIRE(scan.svals.size() >= 3);
  CHECK(scan.svals[0] == doctest::Approx(0.170954).epsilon(1e-4));
  CHECK(scan.svals[1] == doctest::Approx(0.536205).epsilon(1e-4));
  CHECK(scan.svals[2] == doctest::Approx(0.536205).epsilon(1e-4));

  // magnetic translations pin the spectrum on twists that are multiples of
  // 1/L; in between it moves only at the lattice-ripple scale
  auto d2 = nahm::build_twisted_dirac(u, {0.37, 0.11, 0.83, 0.59}, 1.0);
  CHECK(std::abs(nahm::min_singular(d2) - scan.svals[0]) <= 1e-4);
}

TEST_CASE("kernel frame carries certificates and matches the dense projector") {
  auto u = unit_flux(4);
  auto d = nahm::build_twisted_dirac(u, {0.1, 0.7, 0.2, 0.4}, 1.0);
  auto opt = coarse_options();
  auto kf = nahm::kernel_frame(d, 1, opt);
  REQUIRE(kf.frame.cols() == 1);
  CHECK(kf.svals(0) == doctest::Approx(0.3756).epsilon(1e-3));
  CHECK(kf.svals(1) > opt.ceiling);
  CHECK(std::abs(kf.frame.col(0).norm() - 1.0) <= 1e-12);

  // eigen-residual certificate of the frame column
  const std::size_t n = d.dim();
  std::vector<cdbl> x(n), hx(n), scratch(n);
  Eigen::Map<Eigen::VectorXcd>(x.data(), n) = kf.frame.col(0);
  d.normal_minus(x.data(), hx.data(), scratch.data());
  const double lam = kf.svals(0) * kf.svals(0);
  double res = 0.0;
  for (std::size_t i = 0; i < n; ++i) res += std::norm(hx[i] - lam * x[i]);
  CHECK(std::sqrt(res) <= 1e-3);

  auto p = nahm::kernel_projector(d, 0.45);
  CHECK(std::abs(p.trace().real() - 1.0) <= 1e-4);
  CHECK((p * kf.frame - kf.frame).norm() <= 1e-8);
}

TEST_CASE("kernel projector is an orthogonal projector annihilated by the minus side") {
  // trivial twist on the free field keeps four exact zero modes, so the
  // range condition holds at full precision
  auto u = gauge::identity_field(4, 1);
  auto d = nahm::build_twisted_dirac(u, {0.0, 0.0, 0.0, 0.0}, 1.0);
  auto p = nahm::kernel_projector(d, 0.2);
  CHECK((p * p - p).norm() <= 1e-8);
  CHECK((p - p.adjoint()).norm() <= 1e-12);
  CHECK(std::abs(p.trace().real() - 4.0) <= 1e-4);
  Eigen::MatrixXcd a = d.dense_plus();
  CHECK((a.adjoint() * p).norm() <= 1e-6);
}

TEST_CASE("free-field bundle away from the degeneracy locus is empty and certified") {
  auto u = gauge::identity_field(4, 1);
  nahm::PicardGrid grid({2, 2, 1, 1}, {0.2, 0.3, 0.15, 0.4});
  nahm::BundleOptions opt;
  auto b = nahm::nahm_bundle(u, grid, opt);
  CHECK(b.rank == 0);
  REQUIRE(b.sv_low.size() == grid.npoints());
  for (std::size_t pt = 0; pt < grid.npoints(); ++pt) {
    auto rho = grid.rho(grid.coords(pt));
    CHECK(b.sv_low[pt] == doctest::Approx(free_min_sv(4, rho, 1.0)).epsilon(1e-6));
    CHECK(b.frames[pt].cols() == 0);
  }
  // nothing to transport, the seam is vacuously exact
  CHECK(nahm::periodicity_check(b, 0) == 0.0);
  // but there is no connection to speak of
  CHECK_THROWS_AS(nahm::nahm_connection(b), std::invalid_argument);
}

TEST_CASE("bundle construction refuses a singular family member and names the point") {
  auto u = gauge::identity_field(4, 1);
  nahm::PicardGrid grid({2, 1, 1, 1}, {0.0, 0.0, 0.0, 0.0});
  nahm::BundleOptions opt;
  try {
    nahm::nahm_bundle(u, grid, opt);
    FAIL("expected the singular twist to be rejected");
  } catch (const std::runtime_error& e) {
    const std::string msg = e.what();
    CHECK(msg.find("singular") != std::string::npos);
    CHECK(msg.find("(0, 0, 0, 0)") != std::string::npos);
  }
}

TEST_CASE("unit-flux slice bundle: constant singular values, Chern number, periodicity decay") {
  auto u = unit_flux(4);
  auto opt = coarse_options();
  nahm::PicardGrid g4({4, 4, 1, 1}, {0.0, 0.0, 0.0, 0.0});
  auto b4 = nahm::nahm_bundle(u, g4, opt);
  CHECK(b4.rank == 1);
  double lo = 1e300, hi = 0.0;
  for (double s : b4.sv_low) {
    lo = std::min(lo, s);
    hi = std::max(hi, s);
  }
  // magnetic translation symmetry pins the whole sweep to one value
  CHECK(hi - lo <= 1e-6);
  CHECK(lo == doctest::Approx(0.375571).epsilon(1e-5));

  auto c4 = nahm::nahm_connection(b4);
  auto sc = nahm::slice_chern(c4, 0, 1);
  CHECK(sc.chern == -1);
  CHECK(sc.residual <= 1e-9);
  // overlaps sit near unity; an absurd floor trips the coarseness guard
  CHECK_THROWS_AS(nahm::nahm_connection(b4, 0.9999), std::runtime_error);

  // the seam defect of the transported frame decays quadratically in the step
  nahm::PicardGrid g8({8, 8, 1, 1}, {0.0, 0.0, 0.0, 0.0});
  auto b8 = nahm::nahm_bundle(u, g8, opt);
  double p4 = nahm::periodicity_check(b4, 0);
  double p8 = nahm::periodicity_check(b8, 0);
  CHECK(p4 < 0.2);
  CHECK(p8 < 0.6 * p4);

  // rebuilding with identical options reproduces every frame bit-for-bit
  auto b4b = nahm::nahm_bundle(u, g4, opt);
  double maxdiff = 0.0;
  for (std::size_t pt = 0; pt < b4.frames.size(); ++pt)
    maxdiff = std::max(maxdiff, (b4.frames[pt] - b4b.frames[pt]).cwiseAbs().maxCoeff());
  CHECK(maxdiff == 0.0);
}

TEST_CASE("berry patch of the unit flux recovers the quantized dual curvature") {
  auto u = unit_flux(4);
  auto pc = nahm::berry_patch(u, {0.25, 0.25, 0.25, 0.25}, 0.25, 1, coarse_options());
  // dual flux is minus the input block pattern: F(01) = -2 pi, F(23) = +2 pi
  CHECK(std::imag(pc.comp[0](0, 0)) == doctest::Approx(-2.0 * pi).epsilon(1e-6));
  CHECK(std::imag(pc.comp[5](0, 0)) == doctest::Approx(2.0 * pi).epsilon(1e-6));
  for (int pl : {1, 2, 3, 4})
    CHECK(std::abs(pc.comp[pl](0, 0)) <= 1e-4);
  CHECK(nahm::patch_asd_defect({pc}) <= 1e-6);
}

TEST_CASE("four-direction berry curvature of the unit flux is anti-self-dual") {
  auto u = unit_flux(4);
  nahm::PicardGrid grid({3, 3, 3, 3}, {0.0, 0.0, 0.0, 0.0});
  auto b = nahm::nahm_bundle(u, grid, coarse_options());
  auto c = nahm::nahm_connection(b);
  auto f = nahm::berry_curvature(c);
  // the step 1/3 is incommensurate with the magnetic translation orbit, so
  // the measured defect is the genuine lattice ripple, not solver noise
  CHECK(gauge::asd_defect(f) <= 1e-4);
}

TEST_CASE("doubled flux blocks produce a rank-four kernel bundle [slow]") {
  // index oracle: the product of the two block fluxes counts the zero modes
  auto u = gauge::constant_flux_u1(10, flux_blocks(2, -2));
  auto d = nahm::build_twisted_dirac(u, {0.0, 0.0, 0.0, 0.0}, 1.0);
  nahm::BundleOptions opt;
  opt.scan_depth = 8;
  auto scan = nahm::scan_kernel_rank(d, opt);
  CHECK(scan.rank == 4);
  for (int i = 0; i < 4; ++i) CHECK(scan.svals[i] == doctest::Approx(0.123779).epsilon(1e-4));
  CHECK(scan.svals[4] == doctest::Approx(0.458640).epsilon(1e-4));
}
