#pragma once
#include "sim/state.hpp"

namespace iaw {

struct Conserved {
  double mass = 0.0;
  double hamiltonian = 0.0;
};

// mass = int n; H = int (1+n)|v|^2/2 + Pi(1+n) + |grad phi|^2/2 + (phi-1)e^phi + 1
// with phi the Poisson solve stored in the state.
Conserved conserved_quantities(const SimState& s);

}  // namespace iaw
