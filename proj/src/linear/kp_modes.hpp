#pragma once
#include <complex>
#include <vector>

#include "core/field.hpp"
#include "profiles/pressure_law.hpp"

namespace iaw {

struct KpLine {
  std::size_t n = 2048;
  double length = 80.0;
  double weight = -1.0;  // e^{a x} weight; negative selects 0.8 sqrt(V/2)
};

struct KpMode {
  double eta = 0.0;
  std::complex<double> lambda;
  ComplexField g0, g0_star;  // unweighted samples on the line
  double residual = 0.0;     // |(L_KP - lambda) g0|_a / (|lambda| |g0|_a)
  std::complex<double> pairing;  // int g0 conj(g0*) dx
};

std::complex<double> kp_lambda(double V, double eta);

// Closed-form resonant mode of the linearized KP-II operator about the line
// soliton, checked on a weighted periodic line.
KpMode kp_mode(const PressureLaw& law, double eta, const KpLine& line = {});

// L_KP(eta) f on the weighted line: e^{ax} L e^{-ax} applied to e^{ax} f
ComplexField kp_apply_weighted(const PressureLaw& law, double eta, double a, const ComplexField& weighted);

// regularized basis at eta = 0
struct KpZeroBasis {
  RealField g01, g02;
};
KpZeroBasis kp_zero_basis(const PressureLaw& law, const Grid& line);

}  // namespace iaw
