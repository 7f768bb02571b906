#pragma once
// Smallest eigenpairs of a Hermitian positive semidefinite operator that is
// only available as a matrix-vector product. Block LOBPCG over the subspace
// [X W P] with Gram-matrix whitening; one operator apply per search
// direction per iteration, so the cost is dominated by the apply callback.
// An optional preconditioner (must be Hermitian positive definite) and warm
// start columns cut the iteration count when sweeping a family of nearby
// operators.

#include <complex>
#include <cstdint>
#include <functional>

#include <Eigen/Dense>

namespace nwb::nahm {

using cdbl = std::complex<double>;
using ApplyFn = std::function<void(const cdbl* in, cdbl* out)>;

struct EigsOptions {
  int nev = 1;            // eigenpairs that must converge
  int block = 0;          // subspace width per block; 0 picks nev + 3
  int maxit = 500;
  double tol = 1e-8;      // absolute bound on ||H x - lambda x|| per pair
  std::uint64_t seed = 1; // fills start columns not covered by warm starts
};

struct EigsResult {
  Eigen::VectorXd values;   // ascending
  Eigen::MatrixXcd vectors; // one orthonormal column per value
  Eigen::VectorXd residuals;
  int iterations = 0;
};

// Throws std::runtime_error when the residual target is not met within
// opt.maxit iterations. warm may carry any number of start columns; extra
// columns are ignored and missing ones are filled from the seeded rng.
EigsResult lobpcg_smallest(const ApplyFn& h, std::size_t n, const EigsOptions& opt,
                           const ApplyFn& precond = {},
                           const Eigen::MatrixXcd& warm = Eigen::MatrixXcd());

} // namespace nwb::nahm
