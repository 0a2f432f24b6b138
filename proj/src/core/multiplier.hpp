#pragma once
#include <functional>

#include "core/field.hpp"

namespace iaw {

// Fourier multiplier m(xi, zeta1, zeta2); unused transverse slots are zero.
using Symbol = std::function<cplx(double, double, double)>;

// Real fields need m(-k) = conj m(k); violations are reported, not projected.
RealField apply_multiplier(const RealField& f, const Symbol& m);
ComplexField apply_multiplier(const ComplexField& f, const Symbol& m);

// Antiderivative along x in the zero-mean gauge. Every x-line must have
// (numerically) zero mean.
RealField inv_dx(const RealField& f);

namespace symbols {

Symbol identity();
Symbol dx();
// P(k) = |k| sqrt(hp1 + 1/(1+|k|^2))
Symbol dispersion(double hp1);
// (1 - Laplacian)^{-1}
Symbol i0();
Symbol heat(double t);
// weighted symbols with xi -> xi + i a
Symbol mu_a(double a);
Symbol sigma_a(double hp1, double a);

}  // namespace symbols

double dispersion_symbol(double hp1, double r);

}  // namespace iaw
