#pragma once
#include <complex>
#include <vector>

#include "linear/arnoldi.hpp"
#include "linear/operator.hpp"

namespace iaw {

struct EigenCurveOptions {
  double beta = 1.0;        // keep Re lambda > -beta eps^3
  double sigma_hat = 0.02;  // real shift in units of eps^3
  double separation = 3.0;  // required modulus gap to the rest of the spectrum
  unsigned seed = 12345;
  ArnoldiOptions arnoldi{};
};

struct EigenSample {
  double eta = 0.0;
  std::complex<double> lambda;      // branch with Im >= 0
  std::complex<double> partner;     // the other member of the pair
  std::complex<double> next;        // nearest eigenvalue outside the pair
  double separation = 0.0;          // |next| / max |pair|
  double ritz_residual = 0.0;
  Eigen::VectorXcd n_mode;          // n-component, unit L2, positive real peak
};

struct EigenCurve {
  double eps = 0.0, a = 0.0;
  std::vector<EigenSample> samples;
  // Im lambda = l1 eta + b3 eta^3, Re lambda = -l2 eta^2 + b4 eta^4
  double lambda1 = 0.0, lambda2 = 0.0, b3 = 0.0, b4 = 0.0;
  std::vector<double> fit_residual;  // |lambda - model| per sample
};

// Pair of eigenvalues nearest zero at one transverse frequency.
EigenSample resonant_pair(const SolitaryWave& w, double eta, double a, const EigenCurveOptions& opt,
                          const Eigen::VectorXd* seed_vector = nullptr);

// Samples eta in order, seeding each solve with the previous mode; fits
// the coefficients over the samples with eta > 0.
EigenCurve resonant_curve(const SolitaryWave& w, double a, const std::vector<double>& etas,
                          const EigenCurveOptions& opt = {});

// Leading-order constants of the curve in the small-amplitude limit.
double lambda1_limit(double V, double eps);
// (V/9) |v0|_1^2 / |v0|_2^2 / eps with v0 = V Psi_KdV, norms by quadrature
double lambda2_limit_quadrature(double V, double C, double eps, double* l1norm = nullptr, double* l2norm_sq = nullptr);

}  // namespace iaw
