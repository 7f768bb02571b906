#include "nwb/nahm/eigs.hpp"

#include <random>
#include <sstream>
#include <stdexcept>

namespace nwb::nahm {

namespace {

void hermitize(Eigen::MatrixXcd& a) { a = 0.5 * (a + a.adjoint()).eval(); }

} // namespace

EigsResult lobpcg_smallest(const ApplyFn& h, std::size_t n, const EigsOptions& opt,
                           const ApplyFn& precond, const Eigen::MatrixXcd& warm) {
  if (!h) throw std::invalid_argument("lobpcg: operator callback is empty");
  if (opt.nev < 1) throw std::invalid_argument("lobpcg: nev must be at least 1");
  if (opt.maxit < 1) throw std::invalid_argument("lobpcg: maxit must be at least 1");
  const auto nn = static_cast<Eigen::Index>(n);
  Eigen::Index m = opt.block > 0 ? opt.block : opt.nev + 3;
  if (m > nn) m = nn;
  if (m < opt.nev)
    throw std::invalid_argument("lobpcg: block width below nev (operator too small?)");
  if (warm.cols() > 0 && warm.rows() != nn)
    throw std::invalid_argument("lobpcg: warm start rows do not match the operator");

  std::mt19937_64 rng(opt.seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  auto random_fill = [&](Eigen::Ref<Eigen::VectorXcd> col) {
    for (Eigen::Index i = 0; i < col.size(); ++i) {
      double re = gauss(rng), im = gauss(rng);
      col(i) = cdbl(re, im);
    }
  };

  Eigen::MatrixXcd x(nn, m);
  for (Eigen::Index c = 0; c < m; ++c) {
    if (c < warm.cols())
      x.col(c) = warm.col(c);
    else
      random_fill(x.col(c));
  }
  {
    Eigen::HouseholderQR<Eigen::MatrixXcd> qr(x);
    x = qr.householderQ() * Eigen::MatrixXcd::Identity(nn, m);
  }

  auto apply_block = [&](const Eigen::MatrixXcd& in) {
    Eigen::MatrixXcd out(nn, in.cols());
    for (Eigen::Index c = 0; c < in.cols(); ++c) h(in.col(c).data(), out.col(c).data());
    return out;
  };

  Eigen::MatrixXcd hx = apply_block(x);
  Eigen::VectorXd lam;
  {
    Eigen::MatrixXcd a = x.adjoint() * hx;
    hermitize(a);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(a);
    x = (x * es.eigenvectors()).eval();
    hx = (hx * es.eigenvectors()).eval();
    lam = es.eigenvalues();
  }

  Eigen::MatrixXcd p(nn, 0), hp(nn, 0);
  EigsResult result;
  double worst = 0.0;

  for (int it = 0; it <= opt.maxit; ++it) {
    Eigen::MatrixXcd r = hx - x * lam.asDiagonal();
    Eigen::VectorXd rn = r.colwise().norm();
    worst = rn.head(opt.nev).maxCoeff();
    if (worst <= opt.tol) {
      result.iterations = it;
      // polish: re-orthonormalize the returned columns and recompute the
      // Rayleigh quotients so the report reflects the vectors handed back
      Eigen::MatrixXcd xr = x.leftCols(opt.nev);
      Eigen::HouseholderQR<Eigen::MatrixXcd> qr(xr);
      xr = qr.householderQ() * Eigen::MatrixXcd::Identity(nn, opt.nev);
      Eigen::MatrixXcd hxr = apply_block(xr);
      result.values.resize(opt.nev);
      result.residuals.resize(opt.nev);
      for (int c = 0; c < opt.nev; ++c) {
        double v = std::real(xr.col(c).dot(hxr.col(c)));
        result.values(c) = v;
        result.residuals(c) = (hxr.col(c) - v * xr.col(c)).norm();
      }
      result.vectors = std::move(xr);
      return result;
    }
    if (it == opt.maxit) break;

    Eigen::MatrixXcd w(nn, m);
    for (Eigen::Index c = 0; c < m; ++c) {
      if (precond)
        precond(r.col(c).data(), w.col(c).data());
      else
        w.col(c) = r.col(c);
      double nrm = w.col(c).norm();
      if (nrm > 0.0)
        w.col(c) /= nrm;
      else
        random_fill(w.col(c));
    }
    Eigen::MatrixXcd hw = apply_block(w);
    for (Eigen::Index c = 0; c < p.cols(); ++c) {
      double nrm = p.col(c).norm();
      if (nrm > 0.0) {
        p.col(c) /= nrm;
        hp.col(c) /= nrm;
      }
    }

    const Eigen::Index sc = 2 * m + p.cols();
    Eigen::MatrixXcd s(nn, sc), hs(nn, sc);
    s.leftCols(m) = x;
    s.middleCols(m, m) = w;
    hs.leftCols(m) = hx;
    hs.middleCols(m, m) = hw;
    if (p.cols() > 0) {
      s.rightCols(p.cols()) = p;
      hs.rightCols(p.cols()) = hp;
    }

    Eigen::MatrixXcd b = s.adjoint() * s;
    hermitize(b);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> bs(b);
    const double cut = 1e-12 * bs.eigenvalues().maxCoeff();
    Eigen::Index keep = 0;
    for (Eigen::Index i = 0; i < sc; ++i)
      if (bs.eigenvalues()(i) > cut) ++keep;
    if (keep < m) throw std::runtime_error("lobpcg: search subspace collapsed");
    Eigen::MatrixXcd t(sc, keep);
    for (Eigen::Index i = 0, c = 0; i < sc; ++i)
      if (bs.eigenvalues()(i) > cut)
        t.col(c++) = bs.eigenvectors().col(i) / std::sqrt(bs.eigenvalues()(i));

    Eigen::MatrixXcd a = t.adjoint() * (s.adjoint() * hs) * t;
    hermitize(a);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> as(a);
    Eigen::MatrixXcd y = t * as.eigenvectors().leftCols(m);

    Eigen::MatrixXcd yx = y.topRows(m);
    Eigen::MatrixXcd yw = y.middleRows(m, m);
    Eigen::MatrixXcd pn = w * yw, hpn = hw * yw;
    if (p.cols() > 0) {
      Eigen::MatrixXcd yp = y.bottomRows(p.cols());
      pn.noalias() += p * yp;
      hpn.noalias() += hp * yp;
    }
    x = x * yx + pn;
    hx = hx * yx + hpn;
    p = std::move(pn);
    hp = std::move(hpn);
    lam = as.eigenvalues().head(m);
  }

  std::ostringstream msg;
  msg << "lobpcg: residual " << worst << " above tolerance " << opt.tol << " after "
      << opt.maxit << " iterations";
  throw std::runtime_error(msg.str());
}

} // namespace nwb::nahm
