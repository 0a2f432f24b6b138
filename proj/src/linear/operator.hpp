#pragma once
#include <Eigen/Dense>
#include <utility>

#include "core/field.hpp"
#include "profiles/solitary_wave.hpp"

namespace iaw {

struct FieldPair {
  RealField n, psi;
};

// Linearization about the solitary wave in the moving frame, conjugated by
// e^{ax} and Fourier transformed in y. With D_a = d/dx - a, d = c - u_c,
// rho = 1 + n_c and E = e^{phi_c} + eta^2 - D_a^2:
//
//   L = [ D_a d          -D_a rho D_a + eta^2 rho ]
//       [ -(h'(rho) + E^{-1})        d D_a        ]
class LinearizedOperator {
 public:
  LinearizedOperator(const SolitaryWave& w, double eta, double a);

  const SolitaryWave& wave() const { return *w_; }
  double eta() const { return eta_; }
  double a() const { return a_; }

  FieldPair apply(const FieldPair& u) const;
  // same operator acting on (n, psi_x); requires eta = 0
  FieldPair apply_gradient_form(const RealField& n, const RealField& v) const;
  RealField elliptic_inverse(const RealField& f) const;

  // 2N x 2N dense matrix, unknowns ordered (n, psi)
  Eigen::MatrixXd dense() const;
  // reciprocal condition number of E found during the last dense() call
  double elliptic_rcond() const { return rcond_; }

  // per-block sizes, used for relative residuals
  struct Parts {
    FieldPair total;
    double scale = 0.0;  // sum of the L2 norms of the four block actions
  };
  Parts apply_with_scale(const FieldPair& u) const;

 private:
  RealField Da(const RealField& f) const;

  const SolitaryWave* w_;
  double eta_, a_;
  RealField d_, rho_, hp_, ew_;  // c - u, 1 + n, h'(rho), e^phi + eta^2
  double ew_mean_ = 1.0;
  mutable double rcond_ = 0.0;
};

// Upper bound of the weight accepted by the operator: a < sqrt(3) eps / 4.
double max_weight(double eps);

}  // namespace iaw
