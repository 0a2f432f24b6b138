#pragma once
#include <vector>

namespace iaw {

struct LineFit {
  double slope = 0.0;
  double intercept = 0.0;
  double halfwidth = 0.0;  // 95% interval on the slope
  double rms_residual = 0.0;
};

LineFit fit_line(const std::vector<double>& x, const std::vector<double>& y);

// slope of log(norm) against log(1 + t) over t in [t_lo, t_hi]
LineFit fit_decay_exponent(const std::vector<double>& t, const std::vector<double>& norm, double t_lo, double t_hi);

// slope of log(err) against log(eps)
LineFit fit_order(const std::vector<double>& eps, const std::vector<double>& err);

// least squares for y = sum_j c_j x^{p_j}
std::vector<double> fit_powers(const std::vector<double>& x, const std::vector<double>& y, const std::vector<int>& powers);

}  // namespace iaw
