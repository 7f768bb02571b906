#pragma once

#include <Eigen/Dense>

#include <array>

// Hermitian gamma matrices for T^n, n in {1,2,4}: the spin representation
// behind the sign operator F = gamma.m/|m| and the symbol map. n=1 is the
// scalar sign, n=2 uses the first two Pauli matrices, n=4 the chiral 4x4
// construction gamma_mu = [[0, s_mu], [s_mu^+, 0]] with s = (1, -i tau_k).

namespace nwb::qc {

int spinor_rank(int n);

// mu in [0, n)
const Eigen::MatrixXcd& gamma_mat(int n, int mu);

// sum_mu v_mu gamma_mu; squares to |v|^2 identity
Eigen::MatrixXcd clifford(int n, const std::array<double, 4>& v);

} // namespace nwb::qc
