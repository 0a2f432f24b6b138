#pragma once
#include <complex>
#include <functional>
#include <string>
#include <vector>

#include "dispersive/dispersion.hpp"

namespace iaw {

// Radial data in three dimensions, given by its Fourier transform
// fhat(rho) supported (numerically) in [rho_lo, rho_hi].
struct RadialData {
  std::string kind;
  std::function<double(double)> fhat;
  double rho_lo = 0.0;
  double rho_hi = 0.0;
  double extent = 0.0;  // radius holding the data in x at t = 0
};

RadialData gaussian_data(double sigma);
// smooth bump exp(1 - 1/(1 - (rho/rho_c)^2)) on rho < rho_c
RadialData low_frequency_bump(double rho_c);
// narrow Gaussian band around rho_0
RadialData narrow_band(double rho0, double width);

struct RadialOptions {
  double rel_tol = 1e-8;
  int max_doublings = 14;
  int scan_points_min = 400;
};

struct RadialValue {
  std::complex<double> u;
  double achieved = 0.0;  // last relative change between refinements
  int panels = 0;
};

// u(r,t) = (2 pi^2 r)^{-1} int rho sin(rho r) e^{itP(rho)} fhat(rho) d rho
RadialValue evolve_radial(const RadialData& f, const DispersionProfile& p, double r, double t, const RadialOptions& opt = {});

struct RadialSup {
  double t = 0.0;
  double sup = 0.0;
  double r_at = 0.0;
  std::size_t evaluations = 0;
};

// sup over r >= 0, from a scan of the shell the data can reach, refined by Brent
RadialSup radial_sup(const RadialData& f, const DispersionProfile& p, double t, const RadialOptions& opt = {});

// int_{-1}^{1} g(x) e^{i w x} dx for g given at the 16 Gauss nodes
std::complex<double> filon_panel(const std::complex<double>* g_at_nodes, double w);

}  // namespace iaw
