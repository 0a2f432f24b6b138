#include "dispersive/halfwave.hpp"

#include <cmath>

#include "core/error.hpp"
#include "core/multiplier.hpp"

namespace iaw {

HalfwaveEvolver::HalfwaveEvolver(const RealField& f0, const DispersionProfile& profile, double wrap_threshold)
    : s0_(forward(f0)), p_(s0_.c.size()), wrap_threshold_(wrap_threshold) {
  for (std::size_t i = 0; i < p_.size(); ++i) {
    const auto k = s0_.k(i);
    p_[i] = profile.P(std::sqrt(k[0] * k[0] + k[1] * k[1] + k[2] * k[2]));
  }
}

HalfwaveResult HalfwaveEvolver::at(double t) const {
  // P is even, so cos(tP) and sin(tP) keep real fields real
  HalfwaveResult r;
  r.t = t;
  HalfSpectrum s = s0_;
  for (std::size_t i = 0; i < p_.size(); ++i) s.c[i] = s0_.c[i] * std::cos(t * p_[i]);
  r.re = inverse(s, "re");
  for (std::size_t i = 0; i < p_.size(); ++i) s.c[i] = s0_.c[i] * std::sin(t * p_[i]);
  r.im = inverse(s, "im");

  double m2 = 0.0, sup2 = 0.0;
  for (std::size_t i = 0; i < r.re.size(); ++i) {
    const double a = r.re[i] * r.re[i] + r.im[i] * r.im[i];
    m2 += a;
    sup2 = std::max(sup2, a);
  }
  r.l2 = std::sqrt(m2 * r.re.grid.cell_volume());
  r.sup = std::sqrt(sup2);
  r.edge_fraction = edge_mass_fraction(r.re, r.im);
  r.wrapped = r.edge_fraction > wrap_threshold_;
  return r;
}

ComplexField evolve_halfwave(const ComplexField& f0, double t, const DispersionProfile& profile) {
  return apply_multiplier(f0, [&](double a, double b, double c) {
    return std::polar(1.0, t * profile.P(std::sqrt(a * a + b * b + c * c)));
  });
}

double edge_mass_fraction(const RealField& re, const RealField& im, double band) {
  const Grid& g = re.grid;
  require(im.grid == g, Errc::invalid_argument, "edge mass needs matching grids");
  double total = 0.0, edge = 0.0;
  for (std::size_t i = 0; i < g.size(); ++i) {
    const auto idx = g.unravel(i);
    bool near = false;
    for (int d = 0; d < g.dims(); ++d) {
      const double x = g.coord(d, idx[d]);
      if (std::abs(x) >= (0.5 - band) * g.length(d)) near = true;
    }
    const double a = re[i] * re[i] + im[i] * im[i];
    total += a;
    if (near) edge += a;
  }
  return total > 0.0 ? edge / total : 0.0;
}

}  // namespace iaw
