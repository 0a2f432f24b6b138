#pragma once
#include <vector>

#include "core/spectral.hpp"
#include "profiles/solitary_wave.hpp"
#include "sim/state.hpp"

namespace iaw {

// Solitary waves with speeds in [c0 - dc, c0 + dc], sampled on the line
// grid at Chebyshev nodes and interpolated in c; shifts are spectral.
class WaveFamily {
 public:
  WaveFamily(const PressureLaw& law, double c0, const Grid& line, double dc, int nodes = 9);

  double c0() const { return c0_; }
  double c_min() const { return c_lo_; }
  double c_max() const { return c_hi_; }
  const Grid& line() const { return line_; }

  struct Sample {
    RealField n, u;        // profiles of speed c centred at gamma
    RealField n_c, u_c;    // d/dc
    RealField n_x, u_x;    // d/dx
  };
  Sample eval(double c, double gamma) const;

 private:
  std::vector<double> weights(double c, std::vector<double>* dweights) const;

  double c0_, c_lo_, c_hi_;
  Grid line_;
  std::vector<double> nodes_, bary_;
  std::vector<HalfSpectrum> n_hat_, u_hat_;
};

struct ExtractOptions {
  double weight = 0.0;   // a in e^{a(x - gamma)}
  double cutoff = 0.0;   // transverse low-pass of (c, gamma) in wavenumber; 0 keeps all
  int max_iter = 60;
  double step_tol = 1e-13;
};

struct Modulation {
  std::vector<double> c;      // per transverse line, absolute speed
  std::vector<double> gamma;  // per transverse line
  std::vector<double> misfit; // weighted residual norm per line
  int iterations = 0;         // worst line
};

// Gauss-Newton fit of (c, gamma) per transverse line; guess may be empty.
Modulation extract_modulation(const SimState& s, const WaveFamily& fam, const ExtractOptions& opt,
                              const Modulation* guess = nullptr);

// e^{a(x - gamma)} (n - n_c(x - gamma), dx psi - u_c(x - gamma)) in L2 over the box
double weighted_perturbation_norm(const SimState& s, const WaveFamily& fam, const Modulation& m, double a);
// sup of n - n_c(x - gamma)
double perturbation_sup(const SimState& s, const WaveFamily& fam, const Modulation& m);

// manufactured state n_{c(y)}(x - gamma(y)), psi consistent with the winding of fam's c0 wave
SimState modulated_state(const PressureLaw& law, const WaveFamily& fam, const Grid& grid, const std::vector<double>& c,
                         const std::vector<double>& gamma);

}  // namespace iaw
