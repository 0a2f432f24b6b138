#include "linear/arnoldi.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <numeric>

#include "core/error.hpp"

namespace iaw {

ArnoldiResult arnoldi(const std::function<void(const Eigen::VectorXd&, Eigen::VectorXd&)>& op,
                      const Eigen::VectorXd& start, const ArnoldiOptions& opt) {
  const Eigen::Index n = start.size();
  const int m = std::min<int>(opt.krylov, static_cast<int>(n));
  require(opt.nev >= 1 && opt.nev < m, Errc::invalid_argument, "arnoldi needs 1 <= nev < krylov");
  require(start.norm() > 0.0, Errc::invalid_argument, "arnoldi start vector is zero");

  Eigen::VectorXd v0 = start.normalized();
  ArnoldiResult res;
  Eigen::MatrixXd V(n, m + 1);
  Eigen::MatrixXd H(m + 1, m);
  Eigen::VectorXd w(n);

  for (int cycle = 0; cycle < opt.max_restarts; ++cycle) {
    res.cycles = cycle + 1;
    V.setZero();
    H.setZero();
    V.col(0) = v0;
    int k_used = m;
    for (int j = 0; j < m; ++j) {
      op(V.col(j), w);
      // two passes of classical Gram-Schmidt
      for (int pass = 0; pass < 2; ++pass) {
        Eigen::VectorXd h = V.leftCols(j + 1).transpose() * w;
        w.noalias() -= V.leftCols(j + 1) * h;
        H.col(j).head(j + 1) += h;
      }
      H(j + 1, j) = w.norm();
      if (H(j + 1, j) <= 1e-14 * H.col(j).head(j + 1).norm()) {
        k_used = j + 1;  // invariant subspace
        break;
      }
      V.col(j + 1) = w / H(j + 1, j);
    }

    Eigen::EigenSolver<Eigen::MatrixXd> es(H.topLeftCorner(k_used, k_used));
    const auto& ev = es.eigenvalues();
    const auto& Y = es.eigenvectors();
    std::vector<int> order(k_used);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](int a, int b) { return std::abs(ev(a)) > std::abs(ev(b)); });

    const int nev = std::min(opt.nev, k_used);
    const double beta = k_used < m + 1 && k_used == m ? H(m, m - 1) : 0.0;
    res.theta.assign(nev, 0.0);
    res.residual.assign(nev, 0.0);
    res.vectors.resize(n, nev);
    bool all = true;
    for (int i = 0; i < nev; ++i) {
      const int id = order[i];
      Eigen::VectorXcd y = Y.col(id);
      y /= y.norm();
      res.theta[i] = ev(id);
      res.residual[i] = beta * std::abs(y(k_used - 1)) / std::max(std::abs(ev(id)), 1e-300);
      res.vectors.col(i) = V.leftCols(k_used).cast<std::complex<double>>() * y;
      res.vectors.col(i).normalize();
      all = all && res.residual[i] <= (i < opt.nev_tight ? opt.tol : opt.tol_rest);
    }
    if (all) {
      res.converged = true;
      return res;
    }
    // restart from a mix of the wanted Ritz vectors
    v0.setZero();
    for (int i = 0; i < nev; ++i) v0 += res.vectors.col(i).real() + res.vectors.col(i).imag();
    v0.normalize();
  }
  return res;
}

}  // namespace iaw
