#pragma once

#include "nwb/gauge/field.hpp"
#include "nwb/gauge/two_form.hpp"

// Global functionals of a gauge field, all through the clover field strength.

namespace nwb::gauge {

// Yang-Mills action: integral of sum_{mu<nu} |F_{mu nu}|_HS^2 over the torus.
// Bounded below by 8 pi^2 |topological charge|, with equality exactly on
// (anti-)self-dual fields.
double ym_action(const GaugeField& u);
double ym_action(const TwoFormField& f);

// Chern number (1/8pi^2) integral of tr(f ^ f) for the real-valued field
// strength f = -iF; reduces to the flux Pfaffian k01 k23 - k02 k13 + k03 k12
// for constant abelian flux, where it is exact at any L
double topological_charge(const GaugeField& u);
double topological_charge(const TwoFormField& f);

} // namespace nwb::gauge
