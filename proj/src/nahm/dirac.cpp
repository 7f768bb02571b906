#include "nwb/nahm/dirac.hpp"

#include "nwb/kernels/laplace_hop.hpp"

#include <cmath>
#include <stdexcept>

namespace nwb::nahm {

namespace {

constexpr double kPi = 3.14159265358979323846;

// sb = (Id, -i tau1, -i tau2, -i tau3), the spin factors of the hop term
void sb_matrix(int mu, cdbl out[2][2]) {
  const cdbl z(0.0, 0.0), one(1.0, 0.0), mi(0.0, -1.0);
  switch (mu) {
    case 0: out[0][0] = one; out[0][1] = z;   out[1][0] = z;   out[1][1] = one; break;
    case 1: out[0][0] = z;   out[0][1] = mi;  out[1][0] = mi;  out[1][1] = z;   break;
    case 2: out[0][0] = z;   out[0][1] = cdbl(-1.0, 0.0); out[1][0] = one; out[1][1] = z; break;
    default: out[0][0] = mi; out[0][1] = z;   out[1][0] = z;   out[1][1] = cdbl(0.0, 1.0); break;
  }
}

kernels::HopTables hop_tables(const TwistedDirac& d) {
  kernels::HopTables t;
  t.nsite = d.sites();
  for (int mu = 0; mu < 4; ++mu) {
    t.link[mu] = d.link[mu].data();
    t.fwd[mu] = d.fwd[mu].data();
    t.bwd[mu] = d.bwd[mu].data();
  }
  return t;
}

} // namespace

// D+ = [ W  -C^* ; C  W ] on stacked chiral halves; dagger flips the sign
// of the hop blocks. Kernels overwrite their target, so each half gets the
// Wilson term written in place and the hop accumulated from a scratch run.
void TwistedDirac::apply_plus(const cdbl* in, cdbl* out) const {
  const auto t = hop_tables(*this);
  const std::size_t n = half();
  if (hop_scratch_.size() != n) hop_scratch_.resize(n);
  const cdbl* pp = in;
  const cdbl* pm = in + n;
  kernels::laplace_hop_apply(t, wilson_r, pp, out);
  kernels::wilson_hop_apply(t, 0.0, true, pm, hop_scratch_.data());
  for (std::size_t i = 0; i < n; ++i) out[i] -= hop_scratch_[i];
  kernels::laplace_hop_apply(t, wilson_r, pm, out + n);
  kernels::wilson_hop_apply(t, 0.0, false, pp, hop_scratch_.data());
  for (std::size_t i = 0; i < n; ++i) out[n + i] += hop_scratch_[i];
}

void TwistedDirac::apply_minus(const cdbl* in, cdbl* out) const {
  const auto t = hop_tables(*this);
  const std::size_t n = half();
  if (hop_scratch_.size() != n) hop_scratch_.resize(n);
  const cdbl* pp = in;
  const cdbl* pm = in + n;
  kernels::laplace_hop_apply(t, wilson_r, pp, out);
  kernels::wilson_hop_apply(t, 0.0, true, pm, hop_scratch_.data());
  for (std::size_t i = 0; i < n; ++i) out[i] += hop_scratch_[i];
  kernels::laplace_hop_apply(t, wilson_r, pm, out + n);
  kernels::wilson_hop_apply(t, 0.0, false, pp, hop_scratch_.data());
  for (std::size_t i = 0; i < n; ++i) out[n + i] -= hop_scratch_[i];
}

void TwistedDirac::normal_plus(const cdbl* in, cdbl* out, cdbl* scratch) const {
  apply_plus(in, scratch);
  apply_minus(scratch, out);
}

void TwistedDirac::normal_minus(const cdbl* in, cdbl* out, cdbl* scratch) const {
  apply_minus(in, scratch);
  apply_plus(scratch, out);
}

Eigen::SparseMatrix<cdbl> TwistedDirac::sparse_plus() const {
  const std::size_t n = dim();
  const std::size_t h = half();
  std::vector<Eigen::Triplet<cdbl>> trip;
  trip.reserve(sites() * 4 * 16);
  cdbl sb[2][2];
  for (int mu = 0; mu < 4; ++mu) {
    sb_matrix(mu, sb);
    for (std::size_t x = 0; x < sites(); ++x) {
      const std::size_t f = static_cast<std::size_t>(fwd[mu][x]);
      const std::size_t b = static_cast<std::size_t>(bwd[mu][x]);
      const cdbl uf = link[mu][x];
      const cdbl ub = std::conj(link[mu][b]);
      // Wilson term, spin-diagonal inside each chiral half
      for (std::size_t blk : {std::size_t{0}, h})
        for (int sp = 0; sp < 2; ++sp) {
          trip.emplace_back(blk + 2 * x + sp, blk + 2 * x + sp, cdbl(wilson_r, 0.0));
          trip.emplace_back(blk + 2 * x + sp, blk + 2 * f + sp, -0.5 * wilson_r * uf);
          trip.emplace_back(blk + 2 * x + sp, blk + 2 * b + sp, -0.5 * wilson_r * ub);
        }
      // hop C in the lower-left block, -C^dagger in the upper-right
      for (int sp = 0; sp < 2; ++sp)
        for (int sq = 0; sq < 2; ++sq) {
          const cdbl w = sb[sp][sq];
          if (w == cdbl(0.0, 0.0)) continue;
          const cdbl vf = 0.5 * w * uf;
          const cdbl vb = -0.5 * w * ub;
          trip.emplace_back(h + 2 * x + sp, 2 * f + sq, vf);
          trip.emplace_back(h + 2 * x + sp, 2 * b + sq, vb);
          trip.emplace_back(2 * f + sq, h + 2 * x + sp, -std::conj(vf));
          trip.emplace_back(2 * b + sq, h + 2 * x + sp, -std::conj(vb));
        }
    }
  }
  Eigen::SparseMatrix<cdbl> m(n, n);
  m.setFromTriplets(trip.begin(), trip.end());
  return m;
}

Eigen::MatrixXcd TwistedDirac::dense_plus() const { return Eigen::MatrixXcd(sparse_plus()); }

TwistedDirac build_twisted_dirac(const gauge::GaugeField& u, const std::array<double, 4>& rho,
                                 double wilson_r) {
  if (u.rank != 1)
    throw std::invalid_argument("build_twisted_dirac: abelian input connections only");
  if (!(wilson_r > 0.0) || wilson_r > 2.0)
    throw std::invalid_argument("build_twisted_dirac: wilson parameter must be in (0, 2]");
  gauge::Lattice4 lat(u.L);
  TwistedDirac d;
  d.L = u.L;
  d.wilson_r = wilson_r;
  d.rho = rho;
  for (int mu = 0; mu < 4; ++mu) {
    const cdbl twist = std::polar(1.0, 2.0 * kPi * rho[mu] / u.L);
    d.link[mu].resize(lat.nsites());
    d.fwd[mu].resize(lat.nsites());
    d.bwd[mu].resize(lat.nsites());
    for (std::size_t s = 0; s < lat.nsites(); ++s) {
      d.link[mu][s] = u.link[mu][s](0, 0) * twist;
      d.fwd[mu][s] = static_cast<std::int32_t>(lat.shift(s, mu, +1));
      d.bwd[mu][s] = static_cast<std::int32_t>(lat.shift(s, mu, -1));
    }
  }
  return d;
}

double free_wilson_sv(int L, const std::array<double, 4>& rho, double wilson_r,
                      const std::array<int, 4>& m) {
  double s2 = 0.0, w = 0.0;
  for (int mu = 0; mu < 4; ++mu) {
    double th = 2.0 * kPi * (m[mu] + rho[mu]) / L;
    double s = std::sin(th);
    s2 += s * s;
    w += wilson_r * (1.0 - std::cos(th));
  }
  return std::sqrt(s2 + w * w);
}

std::vector<cdbl> harmonic_gauge_phase(int L, int j) {
  if (j < 0 || j > 3) throw std::invalid_argument("harmonic_gauge_phase: direction out of range");
  gauge::Lattice4 lat(L);
  std::vector<cdbl> phase(lat.nsites());
  for (std::size_t s = 0; s < lat.nsites(); ++s)
    phase[s] = std::polar(1.0, 2.0 * kPi * lat.coords(s)[j] / L);
  return phase;
}

void apply_site_phase(const std::vector<cdbl>& phase, const cdbl* in, cdbl* out,
                      std::size_t nblocks) {
  const std::size_t n = phase.size();
  for (std::size_t blk = 0; blk < nblocks; ++blk)
    for (std::size_t s = 0; s < n; ++s) {
      out[2 * (blk * n + s)] = phase[s] * in[2 * (blk * n + s)];
      out[2 * (blk * n + s) + 1] = phase[s] * in[2 * (blk * n + s) + 1];
    }
}

FreePreconditioner::FreePreconditioner(int L, const std::array<double, 4>& rho, double wilson_r,
                                       double shift)
    : L_(L) {
  if (!(shift > 0.0))
    throw std::invalid_argument("FreePreconditioner: shift must be positive");
  gauge::Lattice4 lat(L);
  inv_.resize(lat.nsites());
  for (std::size_t s = 0; s < lat.nsites(); ++s) {
    auto m = lat.coords(s);
    const double sv = free_wilson_sv(L, rho, wilson_r, {m[0], m[1], m[2], m[3]});
    inv_[s] = 1.0 / (sv * sv + shift);
  }
  dft_.resize(static_cast<std::size_t>(L) * L);
  idft_.resize(static_cast<std::size_t>(L) * L);
  for (int k = 0; k < L; ++k)
    for (int j = 0; j < L; ++j) {
      dft_[k * L + j] = std::polar(1.0, -2.0 * kPi * k * j / L);
      idft_[k * L + j] = std::polar(1.0 / L, 2.0 * kPi * k * j / L);
    }
  work_.resize(4 * lat.nsites());
}

void FreePreconditioner::apply(const cdbl* in, cdbl* out) const {
  const std::size_t nsite = inv_.size();
  std::copy(in, in + 4 * nsite, work_.begin());

  // separable transform along each axis, run over all four spin components
  // (two per chiral half); site index is x3-fastest
  auto transform = [&](const std::vector<cdbl>& w, int axis) {
    std::size_t stride = 1;
    for (int a = 3; a > axis; --a) stride *= L_;
    std::vector<cdbl> line(L_), res(L_);
    for (std::size_t base = 0; base < nsite; ++base) {
      if ((base / stride) % L_ != 0) continue; // only x_axis = 0 lines
      for (std::size_t blk = 0; blk < 2; ++blk)
        for (int c = 0; c < 2; ++c) {
          const std::size_t off = 2 * blk * nsite + c;
          for (int t = 0; t < L_; ++t) line[t] = work_[off + 2 * (base + t * stride)];
          for (int k = 0; k < L_; ++k) {
            cdbl acc(0.0, 0.0);
            const cdbl* row = &w[static_cast<std::size_t>(k) * L_];
            for (int j = 0; j < L_; ++j) acc += row[j] * line[j];
            res[k] = acc;
          }
          for (int t = 0; t < L_; ++t) work_[off + 2 * (base + t * stride)] = res[t];
        }
    }
  };

  for (int axis = 0; axis < 4; ++axis) transform(dft_, axis);
  for (std::size_t s = 0; s < nsite; ++s) {
    work_[2 * s] *= inv_[s];
    work_[2 * s + 1] *= inv_[s];
    work_[2 * (nsite + s)] *= inv_[s];
    work_[2 * (nsite + s) + 1] *= inv_[s];
  }
  for (int axis = 0; axis < 4; ++axis) transform(idft_, axis);
  std::copy(work_.begin(), work_.end(), out);
}

} // namespace nwb::nahm
