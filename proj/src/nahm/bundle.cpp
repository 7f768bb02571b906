#include "nwb/nahm/bundle.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <sstream>
#include <stdexcept>
#include <thread>

namespace nwb::nahm {

namespace {

std::string twist_str(const std::array<double, 4>& rho) {
  std::ostringstream os;
  os << "(" << rho[0] << ", " << rho[1] << ", " << rho[2] << ", " << rho[3] << ")";
  return os.str();
}

Eigen::VectorXd to_svals(const Eigen::VectorXd& eigenvalues) {
  Eigen::VectorXd s(eigenvalues.size());
  for (Eigen::Index i = 0; i < s.size(); ++i)
    s(i) = std::sqrt(std::max(0.0, eigenvalues(i)));
  return s;
}

} // namespace

PicardGrid::PicardGrid(const std::array<int, 4>& r, const std::array<double, 4>& b)
    : res(r), base(b) {
  for (int j = 0; j < 4; ++j)
    if (res[j] < 1) throw std::invalid_argument("PicardGrid: resolutions must be at least 1");
}

std::size_t PicardGrid::npoints() const {
  std::size_t n = 1;
  for (int j = 0; j < 4; ++j) n *= static_cast<std::size_t>(res[j]);
  return n;
}

std::size_t PicardGrid::index(const std::array<int, 4>& c) const {
  std::size_t p = 0;
  for (int j = 0; j < 4; ++j) {
    if (c[j] < 0 || c[j] >= res[j]) throw std::out_of_range("PicardGrid: coordinate out of range");
    p = p * static_cast<std::size_t>(res[j]) + static_cast<std::size_t>(c[j]);
  }
  return p;
}

std::array<int, 4> PicardGrid::coords(std::size_t p) const {
  std::array<int, 4> c{};
  for (int j = 3; j >= 0; --j) {
    c[j] = static_cast<int>(p % static_cast<std::size_t>(res[j]));
    p /= static_cast<std::size_t>(res[j]);
  }
  return c;
}

std::array<double, 4> PicardGrid::rho(const std::array<int, 4>& c) const {
  std::array<double, 4> r{};
  for (int j = 0; j < 4; ++j) r[j] = base[j] + static_cast<double>(c[j]) / res[j];
  return r;
}

std::size_t PicardGrid::neighbour(std::size_t p, int j, bool& wrapped) const {
  auto c = coords(p);
  ++c[j];
  wrapped = c[j] == res[j];
  if (wrapped) c[j] = 0;
  return index(c);
}

double min_singular(const TwistedDirac& d, double precond_shift, const EigsOptions& opt) {
  std::vector<cdbl> scratch(d.dim());
  FreePreconditioner pc(d.L, d.rho, d.wilson_r, precond_shift);
  EigsOptions eo = opt;
  eo.nev = 1;
  auto res = lobpcg_smallest(
      [&](const cdbl* in, cdbl* out) { d.normal_plus(in, out, scratch.data()); }, d.dim(), eo,
      [&](const cdbl* in, cdbl* out) { pc.apply(in, out); });
  return std::sqrt(std::max(0.0, res.values(0)));
}

RankScan scan_kernel_rank(const TwistedDirac& d, const BundleOptions& opt) {
  const int depth = std::max(2, opt.scan_depth);
  std::vector<cdbl> scratch(d.dim());
  FreePreconditioner pc(d.L, d.rho, d.wilson_r, opt.precond_shift);
  EigsOptions eo = opt.eigs;
  eo.nev = depth;
  auto res = lobpcg_smallest(
      [&](const cdbl* in, cdbl* out) { d.normal_minus(in, out, scratch.data()); }, d.dim(), eo,
      [&](const cdbl* in, cdbl* out) { pc.apply(in, out); });

  RankScan scan;
  Eigen::VectorXd sv = to_svals(res.values);
  scan.svals.assign(sv.data(), sv.data() + sv.size());
  int q = 0;
  while (q < depth && scan.svals[q] <= opt.ceiling) ++q;
  if (q == depth) {
    std::ostringstream msg;
    msg << "scan_kernel_rank: no stable kernel rank at twist " << twist_str(d.rho)
        << ": all " << depth << " scanned singular values sit below the ceiling "
        << opt.ceiling << "; deepen the scan or raise the ceiling";
    throw std::runtime_error(msg.str());
  }
  if (q > 0) {
    // the gap criterion lives on the normal-operator eigenvalue scale
    // (squared singular values), which is what the solver resolves; the
    // near-kernel band scales like a^2 while the first excited level
    // scales like a, so the squared ratio is the one with a safe margin
    const double lo = std::max(scan.svals[q - 1] * scan.svals[q - 1], 1e-300);
    const double ratio = scan.svals[q] * scan.svals[q] / lo;
    if (ratio < opt.gap_min) {
      std::ostringstream msg;
      msg << "scan_kernel_rank: no stable kernel rank at twist " << twist_str(d.rho)
          << ": eigenvalue gap ratio " << ratio << " between sv[" << q - 1 << "]="
          << scan.svals[q - 1] << " and sv[" << q << "]=" << scan.svals[q]
          << " is below " << opt.gap_min;
      throw std::runtime_error(msg.str());
    }
  }
  scan.rank = q;
  return scan;
}

KernelFrame kernel_frame(const TwistedDirac& d, int q, const BundleOptions& opt,
                         const Eigen::MatrixXcd& warm) {
  if (q < 1) throw std::invalid_argument("kernel_frame: rank must be positive");
  std::vector<cdbl> scratch(d.dim());
  FreePreconditioner pc(d.L, d.rho, d.wilson_r, opt.precond_shift);
  EigsOptions eo = opt.eigs;
  eo.nev = q + 1;
  eo.block = q + 4;
  auto res = lobpcg_smallest(
      [&](const cdbl* in, cdbl* out) { d.normal_minus(in, out, scratch.data()); }, d.dim(), eo,
      [&](const cdbl* in, cdbl* out) { pc.apply(in, out); }, warm);

  KernelFrame kf;
  kf.svals = to_svals(res.values);
  kf.iterations = res.iterations;

  if (kf.svals(0) <= opt.floor) {
    std::ostringstream msg;
    msg << "kernel_frame: family member at twist " << twist_str(d.rho)
        << " is singular (sigma_min=" << kf.svals(0) << " at floor " << opt.floor << ")";
    throw std::runtime_error(msg.str());
  }
  if (kf.svals(q - 1) > opt.ceiling || kf.svals(q) <= opt.ceiling) {
    std::ostringstream msg;
    msg << "kernel_frame: kernel rank " << q << " lost at twist " << twist_str(d.rho)
        << " (sv[" << q - 1 << "]=" << kf.svals(q - 1) << ", sv[" << q << "]="
        << kf.svals(q) << ", ceiling " << opt.ceiling << ")";
    throw std::runtime_error(msg.str());
  }
  kf.frame = res.vectors.leftCols(q);
  kf.block = std::move(res.vectors);
  return kf;
}

Eigen::MatrixXcd kernel_projector(const TwistedDirac& d, double cutoff) {
  Eigen::MatrixXcd a = d.dense_plus();
  Eigen::MatrixXcd h = a * a.adjoint(); // normal operator on the D- side
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(h);
  const auto n = h.rows();
  Eigen::MatrixXcd p = Eigen::MatrixXcd::Zero(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    if (std::sqrt(std::max(0.0, es.eigenvalues()(i))) <= cutoff)
      p.noalias() += es.eigenvectors().col(i) * es.eigenvectors().col(i).adjoint();
  }
  return p;
}

NahmBundle nahm_bundle(const gauge::GaugeField& u, const PicardGrid& grid,
                       const BundleOptions& opt) {
  if (opt.workers < 1) throw std::invalid_argument("nahm_bundle: workers must be at least 1");
  NahmBundle b;
  b.grid = grid;
  b.L = u.L;
  const std::size_t n = grid.npoints();

  int q = opt.rank;
  if (q < 0) {
    auto d0 = build_twisted_dirac(u, grid.rho(grid.coords(0)), opt.wilson_r);
    q = scan_kernel_rank(d0, opt).rank;
  }
  b.rank = q;
  b.frames.resize(n);
  b.sv_low.resize(n);
  b.sv_gap.resize(n);
  b.iterations.resize(n);

  auto sweep = [&](std::size_t lo, std::size_t hi) {
    Eigen::MatrixXcd warm;
    for (std::size_t p = lo; p < hi; ++p) {
      const auto rho = grid.rho(grid.coords(p));
      auto d = build_twisted_dirac(u, rho, opt.wilson_r);
      if (q == 0) {
        // empty bundle: the sweep still certifies invertibility and that no
        // kernel appears anywhere. No warm start here: on families whose
        // eigenbasis barely moves (the free field is the extreme case) the
        // neighbour's vector is an exact excited eigenvector, and a warm
        // solve would stop on it instead of descending to the bottom.
        std::vector<cdbl> scratch(d.dim());
        FreePreconditioner pc(d.L, rho, d.wilson_r, opt.precond_shift);
        EigsOptions eo = opt.eigs;
        eo.nev = 1;
        auto res = lobpcg_smallest(
            [&](const cdbl* in, cdbl* out) { d.normal_minus(in, out, scratch.data()); },
            d.dim(), eo, [&](const cdbl* in, cdbl* out) { pc.apply(in, out); });
        const double sv = std::sqrt(std::max(0.0, res.values(0)));
        if (sv <= opt.ceiling) {
          std::ostringstream msg;
          msg << "nahm_bundle: kernel rank 0 lost at twist " << twist_str(rho)
              << " (sigma_min=" << sv << " below ceiling " << opt.ceiling << ")";
          throw std::runtime_error(msg.str());
        }
        b.frames[p] = Eigen::MatrixXcd(d.dim(), 0);
        b.sv_low[p] = sv;
        b.sv_gap[p] = sv;
        b.iterations[p] = res.iterations;
      } else {
        auto kf = kernel_frame(d, q, opt, warm);
        b.frames[p] = std::move(kf.frame);
        b.sv_low[p] = kf.svals(0);
        b.sv_gap[p] = kf.svals(q);
        b.iterations[p] = kf.iterations;
        warm = std::move(kf.block);
      }
    }
  };

  if (opt.workers == 1 || n < 2 * static_cast<std::size_t>(opt.workers)) {
    sweep(0, n);
  } else {
    const auto nw = static_cast<std::size_t>(opt.workers);
    std::vector<std::exception_ptr> errs(nw);
    std::vector<std::thread> pool;
    pool.reserve(nw);
    for (std::size_t w = 0; w < nw; ++w) {
      const std::size_t lo = n * w / nw, hi = n * (w + 1) / nw;
      pool.emplace_back([&, w, lo, hi] {
        try {
          sweep(lo, hi);
        } catch (...) {
          errs[w] = std::current_exception();
        }
      });
    }
    for (auto& t : pool) t.join();
    for (auto& e : errs)
      if (e) std::rethrow_exception(e);
  }

  if (q > 0) {
    // gauge the frames along a spanning tree so neighbouring overlaps are
    // close to positive hermitian; the root gets a per-column phase pin
    for (Eigen::Index c = 0; c < b.frames[0].cols(); ++c) {
      Eigen::Index imax = 0;
      double best = -1.0;
      for (Eigen::Index i = 0; i < b.frames[0].rows(); ++i) {
        double a = std::abs(b.frames[0](i, c));
        if (a > best) {
          best = a;
          imax = i;
        }
      }
      if (best > 0.0) b.frames[0].col(c) *= std::conj(b.frames[0](imax, c)) / best;
    }
    for (std::size_t p = 1; p < n; ++p) {
      auto c = grid.coords(p);
      int j = 0;
      while (c[j] == 0) ++j; // some coordinate is positive since p > 0
      --c[j];
      const std::size_t parent = grid.index(c);
      Eigen::MatrixXcd m = b.frames[parent].adjoint() * b.frames[p];
      Eigen::JacobiSVD<Eigen::MatrixXcd> svd(m, Eigen::ComputeFullU | Eigen::ComputeFullV);
      b.frames[p] = b.frames[p] * (svd.matrixV() * svd.matrixU().adjoint());
    }
  }
  return b;
}

double periodicity_check(const NahmBundle& b, int j) {
  if (j < 0 || j > 3) throw std::invalid_argument("periodicity_check: direction out of range");
  if (!b.grid.active(j))
    throw std::invalid_argument("periodicity_check: direction was not swept");
  if (b.rank == 0) return 0.0;

  const auto phase = harmonic_gauge_phase(b.L, j);
  double worst = 0.0;
  const std::size_t n = b.grid.npoints();
  for (std::size_t p = 0; p < n; ++p) {
    auto c = b.grid.coords(p);
    if (c[j] != b.grid.res[j] - 1) continue;
    c[j] = 0;
    const auto& first = b.frames[b.grid.index(c)];
    // push the cycle start forward one period: conjugation by the lattice
    // gauge factor exp(-i x_j) maps the family member at rho to rho + e_j;
    // the phase is spin-blind, so it hits both chiral halves
    Eigen::MatrixXcd shifted = first;
    const std::size_t nsite = phase.size();
    for (std::size_t blk = 0; blk < 2; ++blk)
      for (std::size_t s = 0; s < nsite; ++s) {
        shifted.row(2 * (blk * nsite + s)) *= std::conj(phase[s]);
        shifted.row(2 * (blk * nsite + s) + 1) *= std::conj(phase[s]);
      }
    Eigen::MatrixXcd m = b.frames[p].adjoint() * shifted;
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(m);
    for (Eigen::Index i = 0; i < svd.singularValues().size(); ++i)
      worst = std::max(worst, std::abs(svd.singularValues()(i) - 1.0));
  }
  return worst;
}

} // namespace nwb::nahm
