#pragma once
#include <Eigen/Dense>

namespace iaw {

using Mat2 = Eigen::Matrix2cd;

// Leading modulation symbol for (|grad_y| gamma, c~) at transverse
// wavenumber z = |zeta|:
//   [ (-l2 + nu) z^2      z           ]
//   [ -l1^2 z             (-l2 - nu) z^2 ]
struct ModulationSymbol {
  double l1 = 0.0;  // imaginary slope of the spectral curve
  double l2 = 0.0;  // real curvature of the spectral curve
  double nu = 0.0;  // (a11 - a22) / (2 z^2)
  double z = 0.0;

  double a11() const { return (-l2 + nu) * z * z; }
  double a22() const { return (-l2 - nu) * z * z; }
  double omega2() const { return 1.0 - (nu * z / l1) * (nu * z / l1); }
  Mat2 generator() const;
};

// Small-amplitude limits for c0 = V + eps^2: l1 = eps sqrt(2V/3), l2 = sqrt(2V)/(3 eps).
ModulationSymbol modulation_symbol_limit(double V, double c0, double nu, double z);

// Closed-form e^{tA}; needs omega^2 > 0.
Mat2 modulation_semigroup(const ModulationSymbol& s, double t);

// Scaling-and-squaring Pade exponential, used as an oracle.
Mat2 expm_oracle(const Mat2& a, double t);

// e^{tM} for any 2x2 matrix from its trace and determinant.
Mat2 expm2(const Mat2& m, double t);

// Higher-order part, relative O(z^2) corrections of each entry scaled by kappa.
Mat2 modulation_correction(const ModulationSymbol& s, double kappa);

}  // namespace iaw
