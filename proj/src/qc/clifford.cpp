#include "nwb/qc/clifford.hpp"

#include <complex>
#include <stdexcept>
#include <vector>

namespace nwb::qc {

namespace {

using cdbl = std::complex<double>;

Eigen::Matrix2cd pauli(int k) {
  Eigen::Matrix2cd t;
  switch (k) {
    case 1:
      t << 0, 1, 1, 0;
      break;
    case 2:
      t << 0, cdbl(0, -1), cdbl(0, 1), 0;
      break;
    default:
      t << 1, 0, 0, -1;
      break;
  }
  return t;
}

std::vector<Eigen::MatrixXcd> build(int n) {
  std::vector<Eigen::MatrixXcd> g;
  if (n == 1) {
    g.emplace_back(Eigen::MatrixXcd::Identity(1, 1));
  } else if (n == 2) {
    g.emplace_back(pauli(1));
    g.emplace_back(pauli(2));
  } else {
    // s_mu = (1, -i tau_1, -i tau_2, -i tau_3), gamma_mu = [[0, s_mu], [s_mu^+, 0]]
    for (int mu = 0; mu < 4; ++mu) {
      Eigen::Matrix2cd s = (mu == 0)
                               ? Eigen::Matrix2cd::Identity().eval()
                               : (cdbl(0, -1) * pauli(mu)).eval();
      Eigen::MatrixXcd gm = Eigen::MatrixXcd::Zero(4, 4);
      gm.block<2, 2>(0, 2) = s;
      gm.block<2, 2>(2, 0) = s.adjoint();
      g.push_back(gm);
    }
  }
  return g;
}

const std::vector<Eigen::MatrixXcd>& table(int n) {
  static const std::vector<Eigen::MatrixXcd> g1 = build(1);
  static const std::vector<Eigen::MatrixXcd> g2 = build(2);
  static const std::vector<Eigen::MatrixXcd> g4 = build(4);
  switch (n) {
    case 1:
      return g1;
    case 2:
      return g2;
    case 4:
      return g4;
    default:
      throw std::invalid_argument("gamma matrices: n must be 1, 2 or 4");
  }
}

} // namespace

int spinor_rank(int n) {
  switch (n) {
    case 1:
      return 1;
    case 2:
      return 2;
    case 4:
      return 4;
    default:
      throw std::invalid_argument("spinor_rank: n must be 1, 2 or 4");
  }
}

const Eigen::MatrixXcd& gamma_mat(int n, int mu) {
  const auto& g = table(n);
  if (mu < 0 || mu >= n) throw std::invalid_argument("gamma_mat: direction out of range");
  return g[static_cast<std::size_t>(mu)];
}

Eigen::MatrixXcd clifford(int n, const std::array<double, 4>& v) {
  const int d = spinor_rank(n);
  Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(d, d);
  for (int mu = 0; mu < n; ++mu)
    out += v[static_cast<std::size_t>(mu)] * gamma_mat(n, mu);
  return out;
}

} // namespace nwb::qc
