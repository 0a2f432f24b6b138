#pragma once
#include <cstdint>
#include <string>

#include "core/field.hpp"
#include "profiles/pressure_law.hpp"
#include "profiles/solitary_wave.hpp"

namespace iaw {

// Moving-frame state. The potential is psi = psi_p + winding * x / Lx with
// psi_p periodic, so a solitary wave (whose psi' has nonzero integral) fits
// on a periodic box. Velocity is grad psi, hence curl free by construction.
struct SimState {
  Grid grid;
  double t = 0.0;
  double c0 = 0.0;
  PressureLaw law = PressureLaw::isothermal();
  RealField n, psi;  // psi is the periodic part
  double winding = 0.0;
  RealField phi;  // last Poisson solve, used as the next guess

  double ramp() const { return winding / grid.length(0); }
  RealField vx() const;
  RealField vy() const;  // zero field in 1D
};

// Solitary wave of speed c0 = V + eps^2 sampled on a 1D or 2D grid (uniform
// in y), in its own frame.
SimState soliton_state(const PressureLaw& law, double eps, const Grid& grid);
SimState zero_state(const PressureLaw& law, double c0, const Grid& grid);

// Localized bump in x times a transverse cosine, added to (n, psi).
struct Perturbation {
  std::string parity = "even";  // even | odd
  double amplitude = 1e-3;      // weighted norm of (n, dx psi) after scaling
  double x0 = 10.0;
  double width = 3.0;
  int transverse_mode = 0;      // cos(2 pi m y / Ly + phase); 0 means uniform
  double transverse_width = 0;  // > 0: Gaussian exp(-(y/w)^2) instead of the cosine
  double psi_ratio = 1.0;       // psi bump relative to the n bump
  std::uint64_t seed = 1;       // transverse phase
  double weight = 0.0;          // a in e^{a x}
};

struct PerturbationFields {
  RealField n, psi;
};

PerturbationFields perturbation_fields(const Perturbation& p, const Grid& grid);
void add_perturbation(SimState& s, const PerturbationFields& f, double scale = 1.0);

// L2 norm of e^{a x} (n, dx psi)
double weighted_pair_norm(const RealField& n, const RealField& psi, double a);

}  // namespace iaw
