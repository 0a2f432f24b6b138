#pragma once
#include <vector>

#include "core/field.hpp"
#include "profiles/pressure_law.hpp"

namespace iaw {

// Half-profile of the solitary wave in the phase variable phi in (0, phi*].
// Q(phi) = e^phi - 1 - phi - int_0^phi n is the first integral, phi'^2 = 2Q.
class SagdeevProfile {
 public:
  SagdeevProfile(const PressureLaw& law, double c);

  double c() const { return c_; }
  double eps() const { return eps_; }
  double phi_star() const { return phi_star_; }
  // linear decay rate at infinity, kappa^2 = Q''(0)
  double kappa() const { return kappa_; }

  // density on the branch through the origin of phi = c u - u^2/2 - h(1+n)
  double n_of_phi(double phi) const;
  double dQ(double phi) const;
  double Q(double phi) const;
  // distance from the crest at which phi is reached
  double x_of_phi(double phi) const;
  double phi_of_x(double x) const;

 private:
  struct Panel {
    double v0, v1;  // s on the cap, u = log(phi) on the tail
    double x0, x1;
  };
  double cap_integrand(double s) const;
  double tail_integrand(double u) const;
  double cap_x(const Panel& p, double s) const;
  double tail_x(const Panel& p, double u) const;
  void extend_tail(double x_needed) const;

  const PressureLaw* law_;
  double c_, eps_, hp1_;
  double phi_star_ = 0.0, kappa_ = 0.0;
  std::vector<Panel> cap_;
  mutable std::vector<Panel> tail_;
};

struct SolitaryWave {
  PressureLaw law;
  double c = 0.0;
  double eps = 0.0;
  Grid grid;
  RealField n, u, phi;  // u = psi'
  double phi_star = 0.0;
  double kappa = 0.0;
  double decay_rate = 0.0;  // fitted from the sampled tail of n
  double poisson_residual = 0.0;
  double first_integral_residual = 0.0;
};

// Samples the wave on a 1D grid, crest at x = 0. Throws if the grid is too
// short for the requested tolerance or c admits no homoclinic orbit.
SolitaryWave sagdeev_profile(const PressureLaw& law, double c, const Grid& grid, double tol = 1e-9);
SolitaryWave sagdeev_profile_eps(const PressureLaw& law, double eps, const Grid& grid, double tol = 1e-9);

// residual of phi = c u - u^2/2 - h(1+n) and u = c n/(1+n), sup norm
double algebraic_residual(const SolitaryWave& w);

struct CDerivative {
  RealField dn, du, dphi;
  double dc = 0.0;
};

// centered difference in c on the wave's own grid
CDerivative profile_c_derivative(const SolitaryWave& w, double dc);

struct CDerivativeResiduals {
  double continuity = 0.0;  // -(d dn)' + (rho du)' - n'
  double bernoulli = 0.0;   // -u - d du + h'(rho) dn + dphi
  double poisson = 0.0;     // (e^phi - dxx) dphi - dn
};
CDerivativeResiduals c_derivative_residuals(const SolitaryWave& w, const CDerivative& d);

}  // namespace iaw
