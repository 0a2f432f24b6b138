#pragma once
#include <complex>
#include <string>
#include <utility>

namespace iaw {

struct SymbolParams {
  double hp1 = 1.0;  // h'(1)
  double c = 0.0;    // wave speed
  double a = 0.0;    // weight
};

// lambda_pm = i c (xi + i a) pm sigma_a sqrt(-mu_a^2)
std::pair<std::complex<double>, std::complex<double>> symbol_eigenvalues(double xi, double zeta, const SymbolParams& p);
std::complex<double> mu_a(double xi, double zeta, double a);
std::complex<double> sigma_a(double xi, double zeta, double a, double hp1);

// hat-a constraint ahat/(1 - ahat^2) <= sqrt(h'(1) + 1)
bool weight_admissible(double ahat, double hp1);

struct SymbolScan {
  double max_re = 0.0;
  double max_excess = 0.0;  // max of |Im(mu sigma)| - a c
  std::size_t points = 0;
};
// tensor scan over xi in [-xi_max, xi_max], |zeta| in [0, zeta_max]
SymbolScan symbol_scan(const SymbolParams& p, int n_xi, int n_zeta, double xi_max = 50.0, double zeta_max = 50.0);

enum class Region { uniform_high, xi_high, zeta_inner, zeta_low };
const char* region_name(Region r);

struct RegionParams {
  double eps = 0.05;
  double ahat = 0.25;
  double K = 1.0;
  double theta = 0.5;
  double A = 4.0;
  double hp1 = 1.0;
  double V = 0.0;  // sqrt(h'(1) + 1) if left at zero
};

struct Margin {
  double margin = 0.0;  // min of a c - |Im(mu sigma)| over the sample
  double scaled = 0.0;  // margin / (a A eps^2)
  double xi = 0.0, zeta = 0.0;  // where the minimum sits
  std::size_t samples = 0;
};

Margin damping_margin(Region r, const RegionParams& p, int per_axis = 200);

}  // namespace iaw
