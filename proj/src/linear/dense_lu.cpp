#include "linear/dense_lu.hpp"

#include "core/error.hpp"

extern "C" {
void dgetrf_(const int* m, const int* n, double* a, const int* lda, int* ipiv, int* info);
void dgetrs_(const char* trans, const int* n, const int* nrhs, const double* a, const int* lda, const int* ipiv,
             double* b, const int* ldb, int* info);
void dgecon_(const char* norm, const int* n, const double* a, const int* lda, const double* anorm, double* rcond,
             double* work, int* iwork, int* info);
}

namespace iaw {

DenseLU::DenseLU(Eigen::MatrixXd&& a) : lu_(std::move(a)) {
  require(lu_.rows() == lu_.cols() && lu_.rows() > 0, Errc::invalid_argument, "LU needs a square matrix");
  const int n = size();
  const double anorm = lu_.cwiseAbs().colwise().sum().maxCoeff();
  piv_.resize(n);
  int info = 0;
  dgetrf_(&n, &n, lu_.data(), &n, piv_.data(), &info);
  require(info >= 0, Errc::internal, "dgetrf argument error");
  require(info == 0, Errc::domain, "matrix is exactly singular");
  std::vector<double> work(4 * static_cast<std::size_t>(n));
  std::vector<int> iwork(n);
  const char norm = '1';
  dgecon_(&norm, &n, lu_.data(), &n, &anorm, &rcond_, work.data(), iwork.data(), &info);
}

void DenseLU::solve_in_place(double* b, int nrhs) const {
  const int n = size();
  int info = 0;
  const char trans = 'N';
  dgetrs_(&trans, &n, &nrhs, lu_.data(), &n, piv_.data(), b, &n, &info);
  require(info == 0, Errc::internal, "dgetrs failed");
}

void DenseLU::solve_in_place(Eigen::MatrixXd& b) const {
  require(b.rows() == lu_.rows(), Errc::invalid_argument, "LU right-hand side size mismatch");
  solve_in_place(b.data(), static_cast<int>(b.cols()));
}

}  // namespace iaw
