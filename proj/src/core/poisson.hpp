#pragma once
#include <vector>

#include "core/field.hpp"

namespace iaw {

struct PoissonOptions {
  double tol = 1e-11;  // sup-norm of the residual
  int max_iter = 50;
};

struct PoissonResult {
  RealField phi;
  std::vector<double> residuals;  // one per Newton iterate, starting with the guess
  int cg_iterations = 0;
};

// Solves Laplacian(phi) = exp(phi) - 1 - n by damped Newton. The guess
// defaults to (1 - Laplacian)^{-1} n.
PoissonResult poisson_newton(const RealField& n, const PoissonOptions& opt = {}, const RealField* guess = nullptr);

// sup-norm of Laplacian(phi) - exp(phi) + 1 + n
double poisson_residual(const RealField& n, const RealField& phi);

}  // namespace iaw
