#pragma once
// Berry connection of the kernel bundle: unitarized frame overlaps between
// neighbouring grid points, with curvature read off plaquette by plaquette.
// The wrapping links fold in the lattice gauge factor that implements a
// unit twist shift, so every swept direction is a genuine cycle and Chern
// sums over closed slices land on integers.

#include <array>
#include <vector>

#include <Eigen/Dense>

#include "nwb/gauge/two_form.hpp"
#include "nwb/nahm/bundle.hpp"

namespace nwb::nahm {

struct NahmConnection {
  PicardGrid grid;
  int rank = 0;
  // link[j][p]: unitary overlap from point p towards +e_j; empty for
  // directions the grid does not sweep
  std::array<std::vector<Eigen::MatrixXcd>, 4> link;
};

// Throws when the bundle is empty or when any neighbour overlap has a
// singular value below overlap_floor (frames decorrelated, grid too coarse).
NahmConnection nahm_connection(const NahmBundle& b, double overlap_floor = 0.1);

// First Chern number of a two-dimensional slice: the grid must sweep
// exactly the directions mu and nu. The plaquette angle sum is an exact
// integer multiple of 2 pi up to rounding; deviations above 1e-9 throw.
struct SliceChern {
  int chern = 0;
  double residual = 0.0;
};
SliceChern slice_chern(const NahmConnection& c, int mu, int nu);

// Curvature two-form of a hypercubic sweep (all four directions active at
// one common resolution): principal log of each plaquette over the step
// area, anti-hermitized, on the dual-orientation convention fixed below.
gauge::TwoFormField berry_curvature(const NahmConnection& c);

// Curvature components at one twist from fresh frames at the corners of a
// single h x h plaquette per plane. This is how bundles over different
// lattice sizes are compared at matched twists and matched step.
struct PatchCurvature {
  std::array<Eigen::MatrixXcd, 6> comp; // plane order of gauge::plane_index
};
PatchCurvature berry_patch(const gauge::GaugeField& u, const std::array<double, 4>& base,
                           double h, int q, const BundleOptions& opt);

// Anti-self-duality defect over a set of curvature samples, same
// normalization and orientation convention as berry_curvature.
double patch_asd_defect(const std::vector<PatchCurvature>& samples);

} // namespace nwb::nahm
