#pragma once
// Kernel bundle of the twisted Dirac family over a grid on the Picard
// torus. Every grid point carries an orthonormal frame for the near-kernel
// of D-, obtained from the lowest eigenpairs of D- adjoint D- and swept
// with warm starts so neighbouring points stay cheap. The sweep certifies
// two spectral facts at every point: the smallest singular value stays
// above an invertibility floor (no exact zero mode anywhere), and the
// near-kernel rank detected at the first point persists (rank candidates
// below the ceiling, next singular value above it).

#include <array>
#include <cstddef>
#include <vector>

#include <Eigen/Dense>

#include "nwb/gauge/field.hpp"
#include "nwb/nahm/dirac.hpp"
#include "nwb/nahm/eigs.hpp"

namespace nwb::nahm {

// Uniform grid on the dual torus [0,1)^4. A direction with res == 1 is
// frozen at its base value; active directions step by 1/res so the grid
// covers one full period. Flattened indices run with the last direction
// fastest, matching gauge::Lattice4.
struct PicardGrid {
  std::array<int, 4> res{1, 1, 1, 1};
  std::array<double, 4> base{0.0, 0.0, 0.0, 0.0};

  PicardGrid() = default;
  PicardGrid(const std::array<int, 4>& r, const std::array<double, 4>& b);

  std::size_t npoints() const;
  bool active(int j) const { return res[j] > 1; }
  double step(int j) const { return 1.0 / res[j]; }
  std::size_t index(const std::array<int, 4>& c) const;
  std::array<int, 4> coords(std::size_t p) const;
  std::array<double, 4> rho(const std::array<int, 4>& c) const;
  // neighbour in +e_j with wraparound; wrapped reports the seam crossing
  std::size_t neighbour(std::size_t p, int j, bool& wrapped) const;
};

struct BundleOptions {
  double wilson_r = 1.0;
  double floor = 1e-6;         // invertibility certificate: sigma_min must exceed this
  double ceiling = 0.2;        // near-kernel singular values must stay below this
  double gap_min = 5.0;        // required ratio across the kernel gap at the rank scan
  double precond_shift = 0.25; // shift in the free-dispersion preconditioner
  int rank = -1;               // -1 detects the rank at the first grid point
  int scan_depth = 6;          // singular values inspected by the rank scan
  int workers = 1;             // contiguous chunks of the sweep, one thread each
  EigsOptions eigs;            // tol / maxit / seed for the per-point solves
};

struct NahmBundle {
  PicardGrid grid;
  int L = 0; // lattice extent of the underlying gauge field
  int rank = 0;
  std::vector<Eigen::MatrixXcd> frames; // dim x rank per point, phase-aligned
  std::vector<double> sv_low;           // smallest singular value per point
  std::vector<double> sv_gap;           // first singular value above the kernel
  std::vector<int> iterations;          // eigensolver iterations per point
};

// Smallest singular value of the family member at one twist, computed
// iteratively with the free-dispersion preconditioner.
double min_singular(const TwistedDirac& d, double precond_shift = 0.25,
                    const EigsOptions& opt = {});

// Lowest singular values and the detected near-kernel rank at one twist.
struct RankScan {
  std::vector<double> svals; // ascending, scan_depth of them
  int rank = 0;
};
RankScan scan_kernel_rank(const TwistedDirac& d, const BundleOptions& opt);

// Orthonormal frame for the q lowest right singular directions of D-
// (eigenvectors of D- adjoint D-), plus the (q+1)-th singular value as a
// gap diagnostic. warm may carry start vectors from a nearby twist.
struct KernelFrame {
  Eigen::MatrixXcd frame; // dim x q
  Eigen::MatrixXcd block; // all solved columns, warm-start fodder for a neighbour
  Eigen::VectorXd svals;  // q+1 lowest singular values, ascending
  int iterations = 0;
};
KernelFrame kernel_frame(const TwistedDirac& d, int q, const BundleOptions& opt,
                         const Eigen::MatrixXcd& warm = Eigen::MatrixXcd());

// Dense spectral projector onto the singular directions of D- at or below
// cutoff. Small lattices only; the iterative path above is the production
// one, this is its cross-check.
Eigen::MatrixXcd kernel_projector(const TwistedDirac& d, double cutoff);

NahmBundle nahm_bundle(const gauge::GaugeField& u, const PicardGrid& grid,
                       const BundleOptions& opt);

// Unitarity defect of the seam overlap in direction j: the frame at the
// last grid point is compared, through the lattice gauge factor that
// implements a unit twist shift, against the frame at the start of the
// cycle one grid step away. Exact periodicity would give a unitary
// overlap; the defect decays with the grid step. Returns the worst
// deviation |sv - 1| over the seam.
double periodicity_check(const NahmBundle& b, int j);

} // namespace nwb::nahm
