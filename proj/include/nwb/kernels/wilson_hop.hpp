#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>

// Stencil application of the chiral Wilson-Weyl operator for U(1) gauge
// fields on a 4d periodic lattice. This is the hot loop of the Nahm
// pipeline, so it gets a scalar reference lane and an AVX2 lane (one
// 2-spinor = one 256-bit register).
//
// Operator convention, spin matrices sb[mu] = (Id, -i tau1, -i tau2, -i tau3):
//
//   (D+ psi)(x) = sum_mu sb[mu] ( rw psi(x)
//                                 + cf u_mu(x) psi(x+mu)
//                                 + cb conj(u_mu(x-mu)) psi(x-mu) )
//   cf = (1 - rw)/2,  cb = -(1 + rw)/2
//
// dagger=true applies the adjoint: spin matrices sb[mu]^dagger and the
// forward/backward coefficients swapped. Both lanes evaluate per site and
// direction in the same order with the same expressions, so their outputs
// are bitwise identical.

namespace nwb::kernels {

using cdbl = std::complex<double>;

struct HopTables {
  std::size_t nsite = 0;
  const cdbl* link[4] = {nullptr, nullptr, nullptr, nullptr}; // per dir, per site (twist folded in)
  const std::int32_t* fwd[4] = {nullptr, nullptr, nullptr, nullptr};
  const std::int32_t* bwd[4] = {nullptr, nullptr, nullptr, nullptr};
};

// out(x) as above; in/out are site-major arrays of 2 complex per site and
// must not alias.
void wilson_hop_apply(const HopTables& t, double rw, bool dagger,
                      const cdbl* in, cdbl* out);

namespace detail {
void wilson_hop_scalar(const HopTables& t, double rw, bool dagger,
                       const cdbl* in, cdbl* out);
void wilson_hop_avx2(const HopTables& t, double rw, bool dagger,
                     const cdbl* in, cdbl* out);
} // namespace detail

} // namespace nwb::kernels
