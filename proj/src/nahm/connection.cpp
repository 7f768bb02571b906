#include "nwb/nahm/connection.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace nwb::nahm {

namespace {

constexpr double kPi = 3.14159265358979323846;

// The curvature of the dual bundle is compared against anti-self-duality in
// the dual coordinates ordered like the lattice ones. Whether that framing
// or its mirror matches the orientation the Hodge star was fixed in is a
// convention; flipping the sign of every plane containing direction 3
// reverses it.
constexpr bool kFlipDualOrientation = false;

void apply_orientation(std::array<Eigen::MatrixXcd, 6>& comp) {
  if (!kFlipDualOrientation) return;
  for (int p : {2, 4, 5}) comp[p] = -comp[p];
}

// principal logarithm of a (numerically) unitary matrix, anti-hermitized
Eigen::MatrixXcd unitary_log(const Eigen::MatrixXcd& u) {
  if (u.rows() == 1) return Eigen::MatrixXcd::Constant(1, 1, cdbl(0.0, std::arg(u(0, 0))));
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(u);
  Eigen::MatrixXcd d = Eigen::MatrixXcd::Zero(u.rows(), u.cols());
  for (Eigen::Index i = 0; i < u.rows(); ++i)
    d(i, i) = cdbl(0.0, std::arg(es.eigenvalues()(i)));
  Eigen::MatrixXcd lg = es.eigenvectors() * d * es.eigenvectors().inverse();
  return 0.5 * (lg - lg.adjoint());
}

Eigen::MatrixXcd unitarized_overlap(const Eigen::MatrixXcd& m, double floor,
                                    const std::string& what) {
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(m, Eigen::ComputeFullU | Eigen::ComputeFullV);
  const double lo = svd.singularValues().minCoeff();
  if (lo < floor) {
    std::ostringstream msg;
    msg << what << ": frame overlap nearly singular (sv_min=" << lo
        << " below " << floor << "); the grid step is too coarse to track the bundle";
    throw std::runtime_error(msg.str());
  }
  return svd.matrixU() * svd.matrixV().adjoint();
}

} // namespace

NahmConnection nahm_connection(const NahmBundle& b, double overlap_floor) {
  if (b.rank < 1)
    throw std::invalid_argument("nahm_connection: bundle fibres are empty, nothing to connect");
  NahmConnection c;
  c.grid = b.grid;
  c.rank = b.rank;
  const std::size_t n = b.grid.npoints();
  for (int j = 0; j < 4; ++j) {
    if (!b.grid.active(j)) continue;
    const auto phase = harmonic_gauge_phase(b.L, j);
    c.link[j].resize(n);
    for (std::size_t p = 0; p < n; ++p) {
      bool wrapped = false;
      const std::size_t nb = b.grid.neighbour(p, j, wrapped);
      Eigen::MatrixXcd target = b.frames[nb];
      if (wrapped) {
        // crossing the seam: conjugation by exp(-i x_j) carries the cycle
        // start one full period up in rho_j; both chiral halves get the phase
        const std::size_t nsite = phase.size();
        for (std::size_t blk = 0; blk < 2; ++blk)
          for (std::size_t s = 0; s < nsite; ++s) {
            target.row(2 * (blk * nsite + s)) *= std::conj(phase[s]);
            target.row(2 * (blk * nsite + s) + 1) *= std::conj(phase[s]);
          }
      }
      std::ostringstream what;
      const auto rho = b.grid.rho(b.grid.coords(p));
      what << "nahm_connection: link from twist (" << rho[0] << ", " << rho[1] << ", "
           << rho[2] << ", " << rho[3] << ") towards +e_" << j;
      c.link[j][p] = unitarized_overlap(b.frames[p].adjoint() * target, overlap_floor,
                                        what.str());
    }
  }
  return c;
}

SliceChern slice_chern(const NahmConnection& c, int mu, int nu) {
  if (mu < 0 || mu > 3 || nu < 0 || nu > 3 || mu == nu)
    throw std::invalid_argument("slice_chern: bad plane");
  for (int j = 0; j < 4; ++j) {
    const bool wanted = (j == mu || j == nu);
    if (c.grid.active(j) != wanted)
      throw std::invalid_argument(
          "slice_chern: grid must sweep exactly the two requested directions");
  }
  double sum = 0.0;
  const std::size_t n = c.grid.npoints();
  for (std::size_t p = 0; p < n; ++p) {
    bool w = false;
    const std::size_t pmu = c.grid.neighbour(p, mu, w);
    const std::size_t pnu = c.grid.neighbour(p, nu, w);
    Eigen::MatrixXcd pl = c.link[mu][p] * c.link[nu][pmu] * c.link[mu][pnu].adjoint() *
                          c.link[nu][p].adjoint();
    sum += std::arg(pl.determinant());
  }
  const double t = sum / (2.0 * kPi);
  SliceChern out;
  out.chern = static_cast<int>(std::lround(t));
  out.residual = std::abs(t - out.chern);
  if (out.residual > 1e-9) {
    std::ostringstream msg;
    msg << "slice_chern: plaquette angle sum " << t
        << " (in units of 2 pi) is not integral; holonomy bookkeeping is broken";
    throw std::runtime_error(msg.str());
  }
  return out;
}

gauge::TwoFormField berry_curvature(const NahmConnection& c) {
  const int r = c.grid.res[0];
  for (int j = 0; j < 4; ++j)
    if (c.grid.res[j] != r || r < 2)
      throw std::invalid_argument(
          "berry_curvature: needs a hypercubic sweep of all four directions");
  const double h = 1.0 / r;
  gauge::TwoFormField f(r, c.rank);
  const std::size_t n = c.grid.npoints();
  for (int p = 0; p < 6; ++p) {
    const auto [mu, nu] = gauge::plane_dirs(p);
    for (std::size_t s = 0; s < n; ++s) {
      bool w = false;
      const std::size_t smu = c.grid.neighbour(s, mu, w);
      const std::size_t snu = c.grid.neighbour(s, nu, w);
      Eigen::MatrixXcd pl = c.link[mu][s] * c.link[nu][smu] * c.link[mu][snu].adjoint() *
                            c.link[nu][s].adjoint();
      f.comp[p][s] = unitary_log(pl) / (h * h);
    }
  }
  if (kFlipDualOrientation)
    for (int p : {2, 4, 5})
      for (std::size_t s = 0; s < n; ++s) f.comp[p][s] = -f.comp[p][s];
  return f;
}

PatchCurvature berry_patch(const gauge::GaugeField& u, const std::array<double, 4>& base,
                           double h, int q, const BundleOptions& opt) {
  if (q < 1) throw std::invalid_argument("berry_patch: rank must be positive");
  if (!(h > 0.0) || h > 0.5) throw std::invalid_argument("berry_patch: bad step");

  // 11 corner frames: the base twist, one step along each direction, and one
  // step along both directions of each plane; everything warm-starts off the
  // base solve
  auto solve = [&](const std::array<double, 4>& rho, const Eigen::MatrixXcd& warm) {
    return kernel_frame(build_twisted_dirac(u, rho, opt.wilson_r), q, opt, warm);
  };
  KernelFrame origin = solve(base, Eigen::MatrixXcd());
  std::array<Eigen::MatrixXcd, 4> along;
  for (int mu = 0; mu < 4; ++mu) {
    auto rho = base;
    rho[mu] += h;
    along[mu] = solve(rho, origin.block).frame;
  }
  PatchCurvature out;
  for (int p = 0; p < 6; ++p) {
    const auto [mu, nu] = gauge::plane_dirs(p);
    auto rho = base;
    rho[mu] += h;
    rho[nu] += h;
    Eigen::MatrixXcd across = solve(rho, origin.block).frame;
    const std::string what = "berry_patch";
    Eigen::MatrixXcd v1 = unitarized_overlap(origin.frame.adjoint() * along[mu], 0.1, what);
    Eigen::MatrixXcd v2 = unitarized_overlap(along[mu].adjoint() * across, 0.1, what);
    Eigen::MatrixXcd v3 = unitarized_overlap(along[nu].adjoint() * across, 0.1, what);
    Eigen::MatrixXcd v4 = unitarized_overlap(origin.frame.adjoint() * along[nu], 0.1, what);
    out.comp[p] = unitary_log(v1 * v2 * v3.adjoint() * v4.adjoint()) / (h * h);
  }
  apply_orientation(out.comp);
  return out;
}

double patch_asd_defect(const std::vector<PatchCurvature>& samples) {
  double plus = 0.0, total = 0.0;
  for (const auto& s : samples) {
    Eigen::MatrixXcd c1 = s.comp[0] + s.comp[5];
    Eigen::MatrixXcd c2 = s.comp[1] - s.comp[4];
    Eigen::MatrixXcd c3 = s.comp[2] + s.comp[3];
    plus += 0.5 * (c1.squaredNorm() + c2.squaredNorm() + c3.squaredNorm());
    for (const auto& f : s.comp) total += f.squaredNorm();
  }
  return total > 0.0 ? std::sqrt(plus / total) : 0.0;
}

} // namespace nwb::nahm
