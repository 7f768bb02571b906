#pragma once

#include "nwb/kernels/wilson_hop.hpp"

// Covariant lattice Laplacian stencil, spin-diagonal, for the Wilson term
// of the twisted Dirac family. Shares HopTables with the Wilson-Weyl hop.
//
//   (W psi)(x) = c * sum_mu ( psi(x)
//                             - 1/2 u_mu(x) psi(x+mu)
//                             - 1/2 conj(u_mu(x-mu)) psi(x-mu) )
//
// Self-adjoint for unitary links, so there is no dagger variant. Scalar
// and AVX2 lanes use the same per-site evaluation order and are bitwise
// identical.

namespace nwb::kernels {

// in/out are site-major arrays of 2 complex per site and must not alias.
void laplace_hop_apply(const HopTables& t, double c, const cdbl* in,
                       cdbl* out);

namespace detail {
void laplace_hop_scalar(const HopTables& t, double c, const cdbl* in,
                        cdbl* out);
void laplace_hop_avx2(const HopTables& t, double c, const cdbl* in,
                      cdbl* out);
} // namespace detail

} // namespace nwb::kernels
