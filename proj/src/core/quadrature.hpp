#pragma once
#include <boost/math/quadrature/gauss.hpp>

#include <array>
#include <cstddef>

namespace iaw {

// Full Gauss-Legendre rule on [-1, 1] unpacked from the boost half tables.
template <std::size_t N>
struct GaussRule {
  std::array<double, N> x{};
  std::array<double, N> w{};

  GaussRule() {
    using G = boost::math::quadrature::gauss<double, N>;
    const auto& ab = G::abscissa();
    const auto& wt = G::weights();
    std::size_t k = 0;
    for (std::size_t i = 0; i < ab.size(); ++i) {
      if (ab[i] == 0.0) {
        x[k] = 0.0;
        w[k++] = wt[i];
        continue;
      }
      x[k] = -ab[i];
      w[k++] = wt[i];
      x[k] = ab[i];
      w[k++] = wt[i];
    }
  }

  static const GaussRule& get() {
    static const GaussRule rule;
    return rule;
  }

  // integral of f over [a, b]
  template <class F>
  double integrate(F&& f, double a, double b) const {
    const double m = 0.5 * (a + b), r = 0.5 * (b - a);
    double s = 0.0;
    for (std::size_t i = 0; i < N; ++i) s += w[i] * f(m + r * x[i]);
    return s * r;
  }
};

}  // namespace iaw
