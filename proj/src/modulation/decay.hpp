#pragma once
#include <array>
#include <complex>
#include <functional>
#include <string>
#include <vector>

#include "modulation/semigroup.hpp"

namespace iaw {

// Radial transverse data in R^2 with transform supported in |zeta| <= 2 eta0.
struct ModulationData {
  std::string kind;
  std::function<std::array<std::complex<double>, 2>(double)> fhat;
};

// bounded transform (Y2 class): smooth plateau equal to one up to 1.5 eta0
ModulationData y2_data(double eta0);

struct DecayOptions {
  double V = 1.4142135623730951;
  double c0 = 1.4142135623730951 + 0.01;
  double eta0 = 0.05;
  double nu = 0.5;
  double kappa = 1.0;  // strength of the higher-order correction, 0 drops it
};

struct DecayTrace {
  double t = 0.0;
  std::array<double, 3> norm{};  // |d_y^k f(t)|_{L2}, k = 0, 1, 2
};

std::vector<DecayTrace> linear_modulation_decay(const ModulationData& f0, const std::vector<double>& times,
                                                const DecayOptions& opt = {});

}  // namespace iaw
