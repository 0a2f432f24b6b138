#include "dispersive/dispersion.hpp"

#include <boost/math/differentiation/autodiff.hpp>
#include <boost/math/tools/roots.hpp>

#include <cmath>
#include <cstdint>
#include <sstream>

#include "core/error.hpp"

namespace iaw {

namespace {

namespace ad = boost::math::differentiation;

template <class T>
T p_of(const T& r, double hp1) {
  using std::sqrt;
  return r * sqrt(hp1 + 1.0 / (1.0 + r * r));
}

double nth(double r, double hp1, int order) {
  const auto x = ad::make_fvar<double, 3>(r);
  return p_of(x, hp1).derivative(order);
}

}  // namespace

DispersionProfile::DispersionProfile(double hp1) : hp1_(hp1) {
  require(hp1 > 0.0 && std::isfinite(hp1), Errc::invalid_argument, "dispersion needs h'(1) > 0");
}

double DispersionProfile::P(double r) const { return p_of(r, hp1_); }
double DispersionProfile::dP(double r) const { return nth(r, hp1_, 1); }
double DispersionProfile::d2P(double r) const { return nth(r, hp1_, 2); }
double DispersionProfile::d3P(double r) const { return nth(r, hp1_, 3); }

double DispersionProfile::inflection_closed_form() const { return std::sqrt(1.0 + std::sqrt(4.0 + 3.0 / hp1_)); }

double DispersionProfile::inflection_bisection() const {
  // P'' < 0 on (0, r0) and > 0 beyond; r0 lies in (sqrt 3, sqrt(1 + sqrt(4 + 3/hp1)) + 1]
  double lo = std::sqrt(3.0) * 0.99, hi = 2.0;
  while (d2P(hi) <= 0.0) hi *= 2.0;
  require(d2P(lo) < 0.0, Errc::internal, "P'' has no sign change above sqrt(3)");
  std::uintmax_t it = 200;
  auto tol = [](double a, double b) { return std::abs(b - a) <= 1e-15 * std::abs(a); };
  const auto br = boost::math::tools::toms748_solve([&](double r) { return d2P(r); }, lo, hi, tol, it);
  return 0.5 * (br.first + br.second);
}

double DispersionProfile::inflection_root() const {
  const double r0 = inflection_closed_form();
  const double rb = inflection_bisection();
  if (std::abs(r0 - rb) > 1e-8) {
    std::ostringstream os;
    os << "inflection root mismatch: closed form " << r0 << " vs root of P'' " << rb;
    fail(Errc::internal, os.str());
  }
  return r0;
}

double DispersionProfile::max_group_speed() const { return std::sqrt(hp1_ + 1.0); }

}  // namespace iaw
