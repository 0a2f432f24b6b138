#include "modulation/recover.hpp"

#include <cmath>

#include "core/error.hpp"
#include "core/multiplier.hpp"
#include "core/spectral.hpp"

namespace iaw {

namespace {

double rel(const RealField& r, const RealField& ref) { return l2_norm(r) / std::max(l2_norm(ref), 1e-300); }

}  // namespace

Recovery recover_longitudinal(const RealField& h1, const RealField& h2, double c0, const PressureLaw& law) {
  const Grid& g = h1.grid;
  require(g.dims() == 1 && h2.grid == g, Errc::invalid_argument, "recovery works on matching 1D fields");
  Recovery r;
  const double hp = law.hp1();
  r.b = c0 * c0 - hp - 1.0;
  r.d = c0 * c0 - hp;
  // c0 = sqrt(h'(1) + 1) in floating point leaves b at rounding level
  require(r.b > 1e-12 * c0 * c0, Errc::domain, "recovery needs c0 > sqrt(h'(1) + 1) so that b > 0");
  const double decay = std::sqrt(r.b / r.d);
  require(g.length(0) * decay >= 40.0, Errc::invalid_argument,
          "box too short for the Green's function: need L >= 40 / sqrt(b/d)");

  const RealField rhs = c0 * h1 + h2;
  const double b = r.b, d = r.d;
  r.dz_n = apply_multiplier(rhs, [=](double k, double, double) { return cplx(-(1.0 + k * k) / (b + d * k * k)); });
  r.dz_n.name = "dz_n";
  r.dz_v1 = h1 + c0 * r.dz_n;
  r.dz_v1.name = "dz_v1";

  // defining equation
  const RealField lhs = b * r.dz_n - d * derivative(r.dz_n, 0, 2);
  const RealField target = -1.0 * (rhs - derivative(rhs, 0, 2));
  r.residual = rel(lhs - target, target);

  // first-order system
  const RealField e1 = -c0 * r.dz_n + r.dz_v1 - h1;
  const RealField inv = apply_multiplier(r.dz_n, [](double k, double, double) { return cplx(1.0 / (1.0 + k * k)); });
  const RealField e2 = -c0 * r.dz_v1 + hp * r.dz_n + inv - h2;
  r.system_residual = std::hypot(l2_norm(e1), l2_norm(e2)) / std::max(std::hypot(l2_norm(h1), l2_norm(h2)), 1e-300);
  return r;
}

RealField green_convolve(const RealField& f, double b, double d) {
  const Grid& g = f.grid;
  require(g.dims() == 1 && b > 0.0 && d > 0.0, Errc::invalid_argument, "green convolution needs 1D data and b, d > 0");
  const std::size_t n = g.n(0);
  const double k = std::sqrt(b / d), dx = g.dx(0), L = g.length(0);
  const double c = 1.0 / (2.0 * std::sqrt(b * d));
  RealField out(g, f.name);
  for (std::size_t i = 0; i < n; ++i) {
    double s = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      double z = std::abs(g.coord(0, i) - g.coord(0, j));
      z = std::min(z, L - z);
      s += std::exp(-k * z) * f[j];
    }
    out[i] = c * s * dx;
  }
  return out;
}

}  // namespace iaw
