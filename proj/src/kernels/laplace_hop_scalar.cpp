#include "nwb/kernels/laplace_hop.hpp"

// Reference lane, same real-arithmetic discipline as the Wilson-Weyl hop:
// fixed evaluation order, no FMA contraction, so the AVX2 lane can match
// bit for bit.

namespace nwb::kernels::detail {

namespace {

inline void cmul(double ar, double ai, double zr, double zi, double& wr,
                 double& wi) {
  wr = ar * zr - ai * zi;
  wi = ar * zi + ai * zr;
}

} // namespace

void laplace_hop_scalar(const HopTables& t, double c, const cdbl* in,
                        cdbl* out) {
  const double ch = -0.5 * c;
  const double* ip = reinterpret_cast<const double*>(in);
  double* op = reinterpret_cast<double*>(out);

  for (std::size_t x = 0; x < t.nsite; ++x) {
    double a_r0 = 0, a_i0 = 0, a_r1 = 0, a_i1 = 0;
    const double pr0 = ip[4 * x + 0], pi0 = ip[4 * x + 1];
    const double pr1 = ip[4 * x + 2], pi1 = ip[4 * x + 3];

    for (int mu = 0; mu < 4; ++mu) {
      const std::size_t f = static_cast<std::size_t>(t.fwd[mu][x]);
      const std::size_t b = static_cast<std::size_t>(t.bwd[mu][x]);

      a_r0 += c * pr0;
      a_i0 += c * pi0;
      a_r1 += c * pr1;
      a_i1 += c * pi1;

      const cdbl u = t.link[mu][x];
      double wr, wi;
      cmul(u.real(), u.imag(), ip[4 * f + 0], ip[4 * f + 1], wr, wi);
      a_r0 += ch * wr;
      a_i0 += ch * wi;
      cmul(u.real(), u.imag(), ip[4 * f + 2], ip[4 * f + 3], wr, wi);
      a_r1 += ch * wr;
      a_i1 += ch * wi;

      const cdbl ub = t.link[mu][b];
      cmul(ub.real(), -ub.imag(), ip[4 * b + 0], ip[4 * b + 1], wr, wi);
      a_r0 += ch * wr;
      a_i0 += ch * wi;
      cmul(ub.real(), -ub.imag(), ip[4 * b + 2], ip[4 * b + 3], wr, wi);
      a_r1 += ch * wr;
      a_i1 += ch * wi;
    }

    op[4 * x + 0] = a_r0;
    op[4 * x + 1] = a_i0;
    op[4 * x + 2] = a_r1;
    op[4 * x + 3] = a_i1;
  }
}

} // namespace nwb::kernels::detail
