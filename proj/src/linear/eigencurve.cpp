#include "linear/eigencurve.hpp"

#include <algorithm>
#include <boost/math/quadrature/exp_sinh.hpp>
#include <cmath>
#include <random>
#include <sstream>

#include "core/error.hpp"
#include "core/fit.hpp"
#include "linear/dense_lu.hpp"

namespace iaw {

double lambda1_limit(double V, double eps) { return eps * std::sqrt(2.0 * V / 3.0); }

double lambda2_limit_quadrature(double V, double C, double eps, double* l1norm, double* l2norm_sq) {
  const double k = std::sqrt(0.5 * V);
  auto v0 = [&](double x) {
    const double s = 1.0 / std::cosh(k * x);
    return V * 3.0 / C * s * s;
  };
  boost::math::quadrature::exp_sinh<double> q;
  const double n1 = 2.0 * q.integrate(v0, 0.0, std::numeric_limits<double>::infinity());
  const double n2 = 2.0 * q.integrate([&](double x) { return v0(x) * v0(x); }, 0.0,
                                      std::numeric_limits<double>::infinity());
  if (l1norm) *l1norm = n1;
  if (l2norm_sq) *l2norm_sq = n2;
  return V / 9.0 * n1 * n1 / n2 / eps;
}

EigenSample resonant_pair(const SolitaryWave& w, double eta, double a, const EigenCurveOptions& opt,
                          const Eigen::VectorXd* seed_vector) {
  const double e3 = w.eps * w.eps * w.eps;
  const double sigma = opt.sigma_hat * e3;
  LinearizedOperator op(w, eta, a);
  Eigen::MatrixXd L = op.dense();
  const Eigen::Index M = L.rows();
  L.diagonal().array() -= sigma;
  DenseLU lu(std::move(L));

  Eigen::VectorXd start(M);
  {
    std::mt19937_64 rng(opt.seed);
    std::normal_distribution<double> nd;
    for (Eigen::Index i = 0; i < M; ++i) start(i) = nd(rng);
    if (seed_vector && seed_vector->size() == M) start = *seed_vector + 1e-3 * seed_vector->norm() / start.norm() * start;
  }
  auto apply = [&](const Eigen::VectorXd& x, Eigen::VectorXd& y) {
    y = x;
    lu.solve_in_place(y.data());
  };
  ArnoldiResult ar = arnoldi(apply, start, opt.arnoldi);

  struct Cand {
    std::complex<double> lam;
    double res;
    int idx;
  };
  std::vector<Cand> cands;
  for (std::size_t i = 0; i < ar.theta.size(); ++i) {
    const auto lam = sigma + 1.0 / ar.theta[i];
    if (lam.real() > -opt.beta * e3) cands.push_back({lam, ar.residual[i], static_cast<int>(i)});
  }
  std::sort(cands.begin(), cands.end(), [](const Cand& x, const Cand& y) { return std::abs(x.lam) < std::abs(y.lam); });
  require(cands.size() >= 3, Errc::convergence, "resonant pair search found too few eigenvalues");
  require(std::max(cands[0].res, cands[1].res) <= opt.arnoldi.tol, Errc::convergence,
          "resonant pair did not converge");

  EigenSample s;
  s.eta = eta;
  const bool first_up = cands[0].lam.imag() >= cands[1].lam.imag();
  s.lambda = first_up ? cands[0].lam : cands[1].lam;
  s.partner = first_up ? cands[1].lam : cands[0].lam;
  s.next = cands[2].lam;
  s.ritz_residual = std::max(cands[0].res, cands[1].res);
  const double pair_mod = std::max(std::abs(cands[0].lam), std::abs(cands[1].lam));
  s.separation = std::abs(s.next) / std::max(pair_mod, 1e-300);
  if (s.separation < opt.separation) {
    std::ostringstream msg;
    msg << "resonant pair not separated (ratio " << s.separation << " at eta " << eta
        << "); refine the grid or lower the eta range";
    fail(Errc::convergence, msg.str());
  }

  const int id = first_up ? cands[0].idx : cands[1].idx;
  const Eigen::Index N = M / 2;
  Eigen::VectorXcd nm = ar.vectors.col(id).head(N);
  Eigen::Index imax = 0;
  nm.cwiseAbs().maxCoeff(&imax);
  nm *= std::conj(nm(imax)) / std::abs(nm(imax));
  nm /= nm.norm() * std::sqrt(w.grid.dx(0));
  s.n_mode = nm;
  return s;
}

EigenCurve resonant_curve(const SolitaryWave& w, double a, const std::vector<double>& etas, const EigenCurveOptions& opt) {
  require(!etas.empty(), Errc::invalid_argument, "eigencurve needs eta samples");
  EigenCurve curve;
  curve.eps = w.eps;
  curve.a = a;
  Eigen::VectorXd seed;
  for (double eta : etas) {
    EigenSample s = resonant_pair(w, eta, a, opt, seed.size() ? &seed : nullptr);
    // the next solve starts from this mode (n part) padded with noise
    seed = Eigen::VectorXd::Zero(2 * s.n_mode.size());
    seed.head(s.n_mode.size()) = s.n_mode.real() + s.n_mode.imag();
    curve.samples.push_back(std::move(s));
  }
  std::vector<double> x, im, re;
  for (const auto& s : curve.samples) {
    if (s.eta <= 0.0) continue;
    x.push_back(s.eta);
    im.push_back(s.lambda.imag());
    re.push_back(s.lambda.real());
  }
  if (x.size() >= 2) {
    const auto ci = fit_powers(x, im, {1, 3});
    const auto cr = fit_powers(x, re, {2, 4});
    curve.lambda1 = ci[0];
    curve.b3 = ci[1];
    curve.lambda2 = -cr[0];
    curve.b4 = cr[1];
  }
  for (const auto& s : curve.samples) {
    const double e = s.eta;
    const std::complex<double> model(-curve.lambda2 * e * e + curve.b4 * e * e * e * e,
                                     curve.lambda1 * e + curve.b3 * e * e * e);
    curve.fit_residual.push_back(std::abs(s.lambda - model));
  }
  return curve;
}

}  // namespace iaw
