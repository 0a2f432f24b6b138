#include "linear/symbols.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "core/error.hpp"

namespace iaw {

using cd = std::complex<double>;

cd mu_a(double xi, double zeta, double a) {
  const cd w(xi, a);
  return std::sqrt(w * w + zeta * zeta);
}

cd sigma_a(double xi, double zeta, double a, double hp1) {
  const cd w(xi, a);
  return std::sqrt(hp1 + 1.0 / (1.0 + zeta * zeta + w * w));
}

std::pair<cd, cd> symbol_eigenvalues(double xi, double zeta, const SymbolParams& p) {
  const cd w(xi, p.a);
  const cd root = std::sqrt(-(w * w + zeta * zeta));
  const cd s = sigma_a(xi, zeta, p.a, p.hp1);
  const cd drift = cd(0.0, p.c) * w;
  return {drift + s * root, drift - s * root};
}

bool weight_admissible(double ahat, double hp1) {
  return ahat >= 0.0 && ahat < 1.0 && ahat / (1.0 - ahat * ahat) <= std::sqrt(hp1 + 1.0);
}

namespace {

// points clustered near zero and spread to +-max
std::vector<double> stretched(int n, double lo, double hi) {
  std::vector<double> v(n);
  for (int i = 0; i < n; ++i) {
    const double t = n == 1 ? 0.0 : static_cast<double>(i) / (n - 1);
    v[i] = lo + (hi - lo) * t;
  }
  return v;
}

std::vector<double> symmetric_cluster(int n, double max) {
  std::vector<double> v(n);
  for (int i = 0; i < n; ++i) {
    const double t = -1.0 + 2.0 * i / (n - 1.0);
    v[i] = max * std::sinh(6.0 * t) / std::sinh(6.0);
  }
  return v;
}

std::vector<double> positive_cluster(int n, double lo, double hi) {
  if (lo <= 0.0) {
    std::vector<double> v(n);
    for (int i = 0; i < n; ++i) v[i] = hi * std::expm1(6.0 * i / (n - 1.0)) / std::expm1(6.0);
    return v;
  }
  std::vector<double> v(n);
  for (int i = 0; i < n; ++i) v[i] = lo * std::pow(hi / lo, i / (n - 1.0));
  return v;
}

}  // namespace

SymbolScan symbol_scan(const SymbolParams& p, int n_xi, int n_zeta, double xi_max, double zeta_max) {
  require(n_xi >= 2 && n_zeta >= 2, Errc::invalid_argument, "scan needs at least 2 points per axis");
  SymbolScan s;
  s.max_re = -std::numeric_limits<double>::infinity();
  s.max_excess = -std::numeric_limits<double>::infinity();
  for (double xi : symmetric_cluster(n_xi, xi_max)) {
    for (double z : positive_cluster(n_zeta, 0.0, zeta_max)) {
      const auto l = symbol_eigenvalues(xi, z, p);
      s.max_re = std::max({s.max_re, l.first.real(), l.second.real()});
      const double im = std::abs((mu_a(xi, z, p.a) * sigma_a(xi, z, p.a, p.hp1)).imag());
      s.max_excess = std::max(s.max_excess, im - p.a * p.c);
      ++s.points;
    }
  }
  return s;
}

const char* region_name(Region r) {
  switch (r) {
    case Region::uniform_high: return "R_UH";
    case Region::xi_high: return "R_H_xi";
    case Region::zeta_inner: return "R_I_zeta1";
    case Region::zeta_low: return "R_I_zeta2";
  }
  return "?";
}

Margin damping_margin(Region r, const RegionParams& p, int per_axis) {
  const double eps = p.eps;
  require(eps > 0.0 && per_axis >= 4, Errc::invalid_argument, "margin needs eps > 0 and a sample grid");
  require(std::pow(p.K, 4) * eps <= 1.0 && p.A * p.A * eps <= 1.0, Errc::invalid_argument,
          "region parameters need K^4 eps <= 1 and A^2 eps <= 1");
  require(p.theta > 0.0 && p.theta <= 0.5, Errc::invalid_argument, "theta must lie in (0, 1/2]");
  const double a = p.ahat * eps;
  const double V = p.V > 0.0 ? p.V : std::sqrt(p.hp1 + 1.0);
  const double c = V + eps * eps;
  const double Ke = p.K * eps, Ae2 = p.A * eps * eps;

  Margin m;
  m.margin = std::numeric_limits<double>::infinity();
  auto visit = [&](double xi, double z) {
    const double im = std::abs((mu_a(xi, z, a) * sigma_a(xi, z, a, p.hp1)).imag());
    const double g = a * c - im;
    ++m.samples;
    if (g < m.margin) {
      m.margin = g;
      m.xi = xi;
      m.zeta = z;
    }
  };

  switch (r) {
    case Region::uniform_high:
      for (double xi : symmetric_cluster(per_axis, 1e3))
        for (double z : positive_cluster(per_axis, 2.0, 1e3)) visit(xi, z);
      break;
    case Region::xi_high: {
      std::vector<double> xs = positive_cluster(per_axis / 2, Ke, 1e3);
      for (double x : std::vector<double>(xs)) xs.push_back(-x);
      for (double xi : xs)
        for (double z : stretched(per_axis, 0.0, 2.0)) visit(xi, z);
      break;
    }
    case Region::zeta_inner:
      for (double xi : stretched(per_axis, -Ke, Ke)) {
        const double lo = p.theta * std::hypot(xi, a);
        for (double z : positive_cluster(per_axis, lo, 2.0)) visit(xi, z);
      }
      break;
    case Region::zeta_low:
      for (double xi : stretched(per_axis, -Ke, Ke)) {
        const double hi = p.theta * std::hypot(xi, a);
        if (hi < Ae2) continue;
        for (double z : stretched(per_axis, Ae2, hi)) visit(xi, z);
      }
      break;
  }
  require(m.samples > 0, Errc::domain, std::string("region ") + region_name(r) + " is empty for these parameters");
  m.scaled = a > 0.0 ? m.margin / (a * Ae2) : 0.0;
  return m;
}

}  // namespace iaw
