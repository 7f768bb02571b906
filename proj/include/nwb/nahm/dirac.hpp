#pragma once

#include "nwb/gauge/field.hpp"
#include "nwb/kernels/wilson_hop.hpp"

#include <Eigen/Dense>
#include <Eigen/Sparse>

#include <array>
#include <cstdint>
#include <vector>

// Twisted Wilson-Dirac operators over the Picard torus. A point rho in [0,1)^4
// multiplies every mu-link by the constant phase e^{2 pi i rho_mu / L}, which
// shifts the holonomy by e^{2 pi i rho_mu}; one full period in rho_j is the
// same operator conjugated by the harmonic gauge e^{-i x_j}.
//
// Spinors carry four components stored as two chiral halves, each site-major
// with 2 complex entries per site: psi = (phi_plus | phi_minus). With
// C = sum_mu sb_mu (symmetric covariant difference), sb = (Id, -i tau_k), and
// W = r * (covariant second-difference term), the operator and its adjoint
// are
//
//   D+ = [ W   -C^* ]        D- = (D+)^* = [  W   C^* ]
//        [ C    W   ]                      [ -C   W   ]
//
// so the spin hop couples the halves and the Wilson term acts inside each
// half. The free-field singular values are fourfold degenerate per Fourier
// mode: sigma(th)^2 = sum_mu sin^2 th_mu + (r sum_mu (1 - cos th_mu))^2 with
// th_mu = 2 pi (m_mu + rho_mu) / L. That dispersion vanishes only at th = 0:
// any two-component reduction keeps spurious zeros on the momentum torus
// (the determinant of its symbol has vanishing total degree), which is why
// the full four-component form is used here.

namespace nwb::nahm {

using cdbl = std::complex<double>;

struct TwistedDirac {
  int L = 0;
  double wilson_r = 1.0;
  std::array<double, 4> rho{};
  // twist-folded U(1) link phases and periodic neighbor tables, site-major
  std::array<std::vector<cdbl>, 4> link;
  std::array<std::vector<std::int32_t>, 4> fwd, bwd;

  std::size_t sites() const { return link[0].size(); }
  std::size_t half() const { return 2 * sites(); } // one chiral half
  std::size_t dim() const { return 4 * sites(); }  // full 4-component spinor

  // D+ and its exact adjoint D-
  void apply_plus(const cdbl* in, cdbl* out) const;
  void apply_minus(const cdbl* in, cdbl* out) const;
  // normal operators (D-)(D+) = (D+)^* D+ and (D+)(D-) = (D-)^* D-;
  // the near-kernel of the minus side is the transform fiber
  void normal_plus(const cdbl* in, cdbl* out, cdbl* scratch) const;
  void normal_minus(const cdbl* in, cdbl* out, cdbl* scratch) const;

  // dense materialization for small-L oracles and the projector construction
  Eigen::MatrixXcd dense_plus() const;
  Eigen::SparseMatrix<cdbl> sparse_plus() const;

  // scratch half-spinor for the hop accumulation; applies on a single
  // instance are not reentrant, give each worker its own copy
  mutable std::vector<cdbl> hop_scratch_;
};

// abelian input connections only (the transform fixtures are U(1) bundles)
TwistedDirac build_twisted_dirac(const gauge::GaugeField& u, const std::array<double, 4>& rho,
                                 double wilson_r);

// closed-form free-field singular value at Fourier mode m (each mode is
// fourfold degenerate): sqrt(sum sin^2 + (r sum (1 - cos))^2)
double free_wilson_sv(int L, const std::array<double, 4>& rho, double wilson_r,
                      const std::array<int, 4>& m);

// site phases e^{+i x_j} = e^{2 pi i n_j / L}, the harmonic gauge whose
// conjugation moves rho_j by one full period
std::vector<cdbl> harmonic_gauge_phase(int L, int j);

// multiply a spinor field by a per-site phase; nblocks counts the stacked
// site-major 2-component halves (2 for a full spinor, 1 for a single half)
void apply_site_phase(const std::vector<cdbl>& phase, const cdbl* in, cdbl* out,
                      std::size_t nblocks);

// (free normal operator + shift)^{-1} through the Fourier transform; used to
// precondition the block eigensolver on smooth backgrounds. The twist enters
// the dispersion, the gauge field does not. The free normal operator is the
// scalar sigma(th)^2 per mode on all four components, identical for both
// chirality sides.
class FreePreconditioner {
 public:
  FreePreconditioner(int L, const std::array<double, 4>& rho, double wilson_r, double shift);
  void apply(const cdbl* in, cdbl* out) const;
  std::size_t dim() const { return 4 * inv_.size(); } // 4 components per mode

 private:
  int L_;
  std::vector<double> inv_;      // per-mode 1 / (sigma^2 + shift)
  std::vector<cdbl> dft_, idft_; // L x L forward/inverse transforms
  mutable std::vector<cdbl> work_;
};

} // namespace nwb::nahm
