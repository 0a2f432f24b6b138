#pragma once
#include <Eigen/Dense>
#include <vector>

namespace iaw {

// LAPACK getrf/getrs/gecon on a column-major Eigen matrix, factorized in place.
class DenseLU {
 public:
  explicit DenseLU(Eigen::MatrixXd&& a);
  int size() const { return static_cast<int>(lu_.rows()); }
  // reciprocal 1-norm condition estimate
  double rcond() const { return rcond_; }
  void solve_in_place(double* b, int nrhs = 1) const;
  void solve_in_place(Eigen::MatrixXd& b) const;

 private:
  Eigen::MatrixXd lu_;
  std::vector<int> piv_;
  double rcond_ = 0.0;
};

}  // namespace iaw
