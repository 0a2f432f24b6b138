#pragma once
#include <cstdint>
#include <limits>
#include <vector>

#include "core/poisson.hpp"
#include "core/spectral.hpp"
#include "sim/state.hpp"

namespace iaw {

struct StepperOptions {
  double cfl = 1.0;  // dt <= cfl * dx / v_max
  bool dealias = true;
  PoissonOptions poisson{};
  // absorbing layer of this width upstream of the box edge; 0 disables it
  double sponge_width = 0.0;
  double sponge_strength = 1.0;
};

struct FieldRates {
  RealField n, psi;
  double winding = 0.0;  // only the absorbing layer changes it
};

// Strang splitting: exact constant-coefficient flow for half a step, RK4 on
// the remainder for a full step, exact flow for the second half.
class Stepper {
 public:
  Stepper(const Grid& grid, const PressureLaw& law, double c0, StepperOptions opt = {});

  void step(SimState& s, double dt);
  double max_dt(const SimState& s) const;

  // time derivative of (n, psi_p) under the full system; phi is refreshed
  FieldRates full_rhs(const SimState& s);
  // the nonlinear remainder only; winding defaults to s.winding
  FieldRates nonlinear_rhs(const SimState& s, const RealField& n, const RealField& psi, RealField& phi,
                           double winding = std::numeric_limits<double>::quiet_NaN());

  std::size_t poisson_solves() const { return solves_; }

  // Fields the absorbing layer relaxes toward (normally the initial wave).
  // The layer removes mass; the removed amount is accumulated exactly so
  // that mass + absorbed stays constant.
  void set_sponge_reference(const SimState& ref);
  double absorbed_mass() const { return absorbed_; }
  // same for the Hamiltonian: H + absorbed_energy stays constant
  double absorbed_energy() const { return absorbed_energy_; }
  const RealField& sponge_profile() const { return sigma_; }

 private:
  void linear_flow(RealField& n, RealField& psi, double tau);
  const std::vector<std::array<cplx, 4>>& flow_coeffs(double tau);
  void filter(HalfSpectrum& s) const;

  Grid grid_;
  PressureLaw law_;
  double c0_;
  StepperOptions opt_;
  std::vector<double> kx_, ky_, k2_;
  std::vector<std::uint8_t> nyq_x_, nyq_y_, keep_;
  double cached_tau_ = -1.0;
  std::vector<std::array<cplx, 4>> coeffs_;
  std::size_t solves_ = 0;
  RealField sigma_, n_ref_, psi_ref_;
  double ref_winding_ = 0.0;
  double sigma_int_ = 0.0;
  double absorbed_ = 0.0;
  double last_flux_ = 0.0;  // int sigma (n - n_ref) of the last rhs call
  double absorbed_energy_ = 0.0;
  double last_power_ = 0.0;
};

}  // namespace iaw
