#pragma once
#include <Eigen/Dense>
#include <complex>
#include <functional>
#include <vector>

namespace iaw {

struct ArnoldiOptions {
  int nev = 4;           // wanted eigenvalues of largest modulus
  int krylov = 40;       // basis size per cycle
  int max_restarts = 60;
  double tol = 1e-12;    // relative Ritz residual for the leading values
  int nev_tight = 2;     // how many leading values must meet tol
  double tol_rest = 1e-6;
};

struct ArnoldiResult {
  std::vector<std::complex<double>> theta;  // sorted by decreasing modulus
  std::vector<double> residual;             // relative Ritz residual per value
  Eigen::MatrixXcd vectors;                 // unit columns
  int cycles = 0;
  bool converged = false;
};

// Explicitly restarted Arnoldi for the dominant eigenvalues of a real
// operator, given as y = op(x).
ArnoldiResult arnoldi(const std::function<void(const Eigen::VectorXd&, Eigen::VectorXd&)>& op,
                      const Eigen::VectorXd& start, const ArnoldiOptions& opt);

}  // namespace iaw
