#pragma once

#include "nwb/dixmier/spectral_measure.hpp"
#include "nwb/lattice/shells.hpp"

#include <array>
#include <vector>

// Spectral families of the flat torus: atoms (1 + |m+alpha|^2)^(-s/2) over
// the modes inside a cutoff ball, packaged as truncated SpectralMeasures.

namespace nwb::lattice {

// Modes with |m + alpha| <= R. alpha = 0 routes through the exact shell
// table; nonzero shifts enumerate modes directly (and are capped by the same
// memory guard). Throws std::invalid_argument / std::length_error as in
// enumerate_shells.
dixmier::SpectralMeasure twisted_spectrum(int n, double s,
                                          const std::array<double, 4>& alpha,
                                          double R);

// Midpoint grid (k + 1/2)/grid per coordinate over [0,1)^n, lexicographic,
// grid^n points; the quadrature weights are uniformly grid^-n.
std::vector<std::array<double, 4>> midpoint_twist_grid(int n, int grid);

} // namespace nwb::lattice
