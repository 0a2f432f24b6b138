#pragma once
#include <vector>

#include "profiles/pressure_law.hpp"
#include "profiles/solitary_wave.hpp"

namespace iaw {

// 3/C sech^2(sqrt(V/2) xhat)
double kdv_soliton(const PressureLaw& law, double xhat);

struct KdvErrors {
  double eps = 0.0;
  double n = 0.0;    // sup |eps^-2 n_c - Psi_KdV|
  double phi = 0.0;  // same for phi_c
  double u = 0.0;    // same for u_c / V
  double envelope_rate = 0.0;  // d in C eps^2 exp(-d |xhat|), fitted
  double max() const;
};

KdvErrors kdv_rescale_error(const SolitaryWave& w);

struct KdvOrder {
  std::vector<KdvErrors> members;
  double q = 0.0;  // fitted order of the max error
  double q_halfwidth = 0.0;
};

KdvOrder kdv_order_fit(const std::vector<KdvErrors>& members);

}  // namespace iaw
