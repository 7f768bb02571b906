#pragma once

#include "nwb/dixmier/estimate.hpp"
#include "nwb/qc/forms.hpp"
#include "nwb/qc/symbol.hpp"

#include <vector>

// Trace-formula checks: Dixmier estimates of order -n operators via
// mode-ball compressions Tr(Pi_R Op Pi_R), compared against the Wodzicki
// residue divided by n. The compression only needs diagonal blocks, which
// either the symbol (for Fourier multipliers with x-dependent coefficients)
// or the lazy word operator (for quantized forms) provides exactly.

namespace nwb::qc {

struct TraceResidueCheck {
  dixmier::DixmierEstimate estimate;
  double residue_over_n = 0.0;
  double relative_gap = 0.0;
};

// sigma must have order -n with a positive-semidefinite x-averaged fiber so
// the partial traces are monotone. radii: strictly increasing mode-ball
// radii (>= 3 of them) defining the estimator window.
TraceResidueCheck connes_check(const TorusSymbol& sigma, const std::vector<double>& radii,
                               double osc_tol = 1e-2);

// Dixmier estimate of Tr(Theta^2) for a degree-2 form on T^4 against
// wodzicki_residue(sigma(Theta)^2)/4, via exact diagonal blocks of the
// squared word operator.
TraceResidueCheck dixmier_of_form_square(const QuantizedForm& theta,
                                         const std::vector<double>& radii,
                                         double osc_tol = 1e-2);

} // namespace nwb::qc
