#include "core/fit.hpp"

#include <Eigen/Dense>
#include <boost/math/distributions/students_t.hpp>
#include <algorithm>
#include <cmath>

#include "core/error.hpp"

namespace iaw {

LineFit fit_line(const std::vector<double>& x, const std::vector<double>& y) {
  require(x.size() == y.size() && x.size() >= 2, Errc::invalid_argument, "line fit needs two or more points");
  const double n = static_cast<double>(x.size());
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
  }
  require(sxx > 0.0, Errc::invalid_argument, "line fit needs distinct abscissae");
  LineFit f;
  f.slope = sxy / sxx;
  f.intercept = my - f.slope * mx;
  double ss = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double r = y[i] - f.intercept - f.slope * x[i];
    ss += r * r;
  }
  f.rms_residual = std::sqrt(ss / n);
  if (x.size() > 2) {
    const double s2 = ss / (n - 2.0);
    boost::math::students_t dist(n - 2.0);
    f.halfwidth = boost::math::quantile(boost::math::complement(dist, 0.025)) * std::sqrt(s2 / sxx);
  }
  return f;
}

LineFit fit_decay_exponent(const std::vector<double>& t, const std::vector<double>& norm, double t_lo, double t_hi) {
  require(t.size() == norm.size(), Errc::invalid_argument, "decay fit size mismatch");
  std::vector<double> lx, ly;
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (t[i] < t_lo || t[i] > t_hi) continue;
    require(norm[i] > 0.0, Errc::domain, "decay fit needs positive norms");
    lx.push_back(std::log1p(t[i]));
    ly.push_back(std::log(norm[i]));
  }
  require(lx.size() >= 4, Errc::invalid_argument, "decay fit needs at least 4 samples in the window");
  return fit_line(lx, ly);
}

LineFit fit_order(const std::vector<double>& eps, const std::vector<double>& err) {
  require(eps.size() == err.size() && eps.size() >= 3, Errc::invalid_argument, "order fit needs at least 3 members");
  std::vector<double> lx, ly;
  for (std::size_t i = 0; i < eps.size(); ++i) {
    require(eps[i] > 0.0 && err[i] > 0.0, Errc::domain, "order fit needs positive data");
    lx.push_back(std::log(eps[i]));
    ly.push_back(std::log(err[i]));
  }
  return fit_line(lx, ly);
}

std::vector<double> fit_powers(const std::vector<double>& x, const std::vector<double>& y, const std::vector<int>& powers) {
  require(x.size() == y.size() && x.size() >= powers.size(), Errc::invalid_argument, "power fit underdetermined");
  // scale the abscissa so the columns are O(1)
  double xs = 0.0;
  for (double v : x) xs = std::max(xs, std::abs(v));
  require(xs > 0.0, Errc::invalid_argument, "power fit needs a nonzero abscissa");
  Eigen::MatrixXd A(x.size(), powers.size());
  Eigen::VectorXd b(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    for (std::size_t j = 0; j < powers.size(); ++j) A(i, j) = std::pow(x[i] / xs, powers[j]);
    b(i) = y[i];
  }
  Eigen::VectorXd c = A.colPivHouseholderQr().solve(b);
  std::vector<double> out(powers.size());
  for (std::size_t j = 0; j < powers.size(); ++j) out[j] = c(j) / std::pow(xs, powers[j]);
  return out;
}

}  // namespace iaw
