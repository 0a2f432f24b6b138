#pragma once
#include "core/field.hpp"
#include "profiles/pressure_law.hpp"

namespace iaw {

struct Recovery {
  RealField dz_n, dz_v1;
  double b = 0.0, d = 0.0;
  double residual = 0.0;         // (b - d dz^2) dz n against -(1 - dz^2)(c0 H1 + H2), relative
  double system_residual = 0.0;  // both first-order equations, relative
};

// Solves -c0 n' + v1' = H1, -c0 v1' + (h'(1) + (1 - dz^2)^{-1}) n' = H2 for (n', v1')
// on a periodic line through the Green's function of (b - d dz^2).
Recovery recover_longitudinal(const RealField& h1, const RealField& h2, double c0, const PressureLaw& law);

// real-space convolution with (2 sqrt(bd))^{-1} e^{-sqrt(b/d)|z|}, for cross-checks
RealField green_convolve(const RealField& f, double b, double d);

}  // namespace iaw
