#include "nwb/kernels/wilson_hop.hpp"

// Reference lane. All complex products are written out in real arithmetic
// with a fixed evaluation order so the AVX2 lane can reproduce them
// exactly. The spin matrices only permute components and multiply by
// +-1/+-i, which are rounding-free.

namespace nwb::kernels::detail {

namespace {

struct c2 {
  double r0, i0, r1, i1; // two complex components of a spinor
};

// (ar + i ai) * z, standard mul/mul/sub-add rounding
inline void cmul(double ar, double ai, double zr, double zi, double& wr,
                 double& wi) {
  wr = ar * zr - ai * zi;
  wi = ar * zi + ai * zr;
}

} // namespace

void wilson_hop_scalar(const HopTables& t, double rw, bool dagger,
                       const cdbl* in, cdbl* out) {
  const double cf0 = (1.0 - rw) * 0.5;
  const double cb0 = -(1.0 + rw) * 0.5;
  // adjoint swaps the roles of the forward and backward shifts
  const double cf = dagger ? cb0 : cf0;
  const double cb = dagger ? cf0 : cb0;
  const double* ip = reinterpret_cast<const double*>(in);
  double* op = reinterpret_cast<double*>(out);

  for (std::size_t x = 0; x < t.nsite; ++x) {
    double a_r0 = 0, a_i0 = 0, a_r1 = 0, a_i1 = 0; // accumulator spinor
    const double pr0 = ip[4 * x + 0], pi0 = ip[4 * x + 1];
    const double pr1 = ip[4 * x + 2], pi1 = ip[4 * x + 3];

    for (int mu = 0; mu < 4; ++mu) {
      const std::size_t f = static_cast<std::size_t>(t.fwd[mu][x]);
      const std::size_t b = static_cast<std::size_t>(t.bwd[mu][x]);
      c2 h{rw * pr0, rw * pi0, rw * pr1, rw * pi1};

      if (cf != 0.0) {
        const cdbl u = t.link[mu][x];
        double wr, wi;
        cmul(u.real(), u.imag(), ip[4 * f + 0], ip[4 * f + 1], wr, wi);
        h.r0 += cf * wr;
        h.i0 += cf * wi;
        cmul(u.real(), u.imag(), ip[4 * f + 2], ip[4 * f + 3], wr, wi);
        h.r1 += cf * wr;
        h.i1 += cf * wi;
      }
      {
        const cdbl ub = t.link[mu][b];
        double wr, wi;
        cmul(ub.real(), -ub.imag(), ip[4 * b + 0], ip[4 * b + 1], wr, wi);
        h.r0 += cb * wr;
        h.i0 += cb * wi;
        cmul(ub.real(), -ub.imag(), ip[4 * b + 2], ip[4 * b + 3], wr, wi);
        h.r1 += cb * wr;
        h.i1 += cb * wi;
      }

      // apply sb[mu] (or its adjoint) and accumulate
      if (!dagger) {
        switch (mu) {
          case 0: // Id
            a_r0 += h.r0; a_i0 += h.i0; a_r1 += h.r1; a_i1 += h.i1;
            break;
          case 1: // -i tau1: (-i h1, -i h0)
            a_r0 += h.i1; a_i0 -= h.r1; a_r1 += h.i0; a_i1 -= h.r0;
            break;
          case 2: // -i tau2: (-h1, h0)
            a_r0 -= h.r1; a_i0 -= h.i1; a_r1 += h.r0; a_i1 += h.i0;
            break;
          case 3: // -i tau3: (-i h0, +i h1)
            a_r0 += h.i0; a_i0 -= h.r0; a_r1 -= h.i1; a_i1 += h.r1;
            break;
        }
      } else {
        switch (mu) {
          case 0:
            a_r0 += h.r0; a_i0 += h.i0; a_r1 += h.r1; a_i1 += h.i1;
            break;
          case 1: // +i tau1: (i h1, i h0)
            a_r0 -= h.i1; a_i0 += h.r1; a_r1 -= h.i0; a_i1 += h.r0;
            break;
          case 2: // +i tau2: (h1, -h0)
            a_r0 += h.r1; a_i0 += h.i1; a_r1 -= h.r0; a_i1 -= h.i0;
            break;
          case 3: // +i tau3: (i h0, -i h1)
            a_r0 -= h.i0; a_i0 += h.r0; a_r1 += h.i1; a_i1 -= h.r1;
            break;
        }
      }
    }

    op[4 * x + 0] = a_r0;
    op[4 * x + 1] = a_i0;
    op[4 * x + 2] = a_r1;
    op[4 * x + 3] = a_i1;
  }
}

} // namespace nwb::kernels::detail
