#include "core/multiplier.hpp"

#include <cmath>

#include "core/error.hpp"
#include "core/spectral.hpp"

namespace iaw {

namespace {

void check_finite(cplx m, cplx fhat) {
  if (fhat != 0.0 && !(std::isfinite(m.real()) && std::isfinite(m.imag())))
    fail(Errc::domain, "multiplier is not finite at an active mode");
}

}  // namespace

RealField apply_multiplier(const RealField& f, const Symbol& m) {
  auto s = forward(f);
  for (std::size_t i = 0; i < s.c.size(); ++i) {
    const auto k = s.k(i);
    const cplx mk = m(k[0], k[1], k[2]);
    check_finite(mk, s.c[i]);
    if (s.c[i] == 0.0) continue;
    const cplx mm = m(-k[0], -k[1], -k[2]);
    if (std::abs(mk - std::conj(mm)) > 1e-12 * (1.0 + std::abs(mk)) && !s.nyquist(i))
      fail(Errc::invalid_argument, "symbol does not map real fields to real fields");
    s.c[i] *= mk;
  }
  return inverse(s, f.name);
}

ComplexField apply_multiplier(const ComplexField& f, const Symbol& m) {
  auto s = forward(f);
  for (std::size_t i = 0; i < s.c.size(); ++i) {
    const auto k = s.k(i);
    const cplx mk = m(k[0], k[1], k[2]);
    check_finite(mk, s.c[i]);
    if (s.c[i] != 0.0) s.c[i] *= mk;
  }
  return inverse(s, f.name);
}

RealField inv_dx(const RealField& f) {
  const Grid& g = f.grid;
  const std::size_t nx = g.n(0);
  const std::size_t stride = g.size() / nx;
  const double scale = std::max(rms(f), 1e-300);
  for (std::size_t t = 0; t < stride; ++t) {
    double s = 0.0;
    for (std::size_t j = 0; j < nx; ++j) s += f.v[j * stride + t];
    if (std::abs(s / nx) > 1e-10 * scale)
      fail(Errc::domain, "inverse x-derivative needs zero longitudinal mean");
  }
  auto s = forward(f);
  for (std::size_t i = 0; i < s.c.size(); ++i) {
    const double k = s.k(i)[0];
    // zero mode fixed by the gauge; Nyquist dropped as in the derivative
    if (k == 0.0 || g.is_nyquist(0, s.slots(i)[0]))
      s.c[i] = 0.0;
    else
      s.c[i] /= cplx(0.0, k);
  }
  return inverse(s, f.name);
}

double dispersion_symbol(double hp1, double r) { return std::abs(r) * std::sqrt(hp1 + 1.0 / (1.0 + r * r)); }

namespace symbols {

Symbol identity() {
  return [](double, double, double) { return cplx(1.0); };
}

Symbol dx() {
  return [](double xi, double, double) { return cplx(0.0, xi); };
}

Symbol dispersion(double hp1) {
  return [hp1](double xi, double z1, double z2) {
    return cplx(dispersion_symbol(hp1, std::sqrt(xi * xi + z1 * z1 + z2 * z2)));
  };
}

Symbol i0() {
  return [](double xi, double z1, double z2) { return cplx(1.0 / (1.0 + xi * xi + z1 * z1 + z2 * z2)); };
}

Symbol heat(double t) {
  return [t](double xi, double z1, double z2) { return cplx(std::exp(-t * (xi * xi + z1 * z1 + z2 * z2))); };
}

Symbol mu_a(double a) {
  return [a](double xi, double z1, double z2) {
    const cplx w(xi, a);
    return std::sqrt(z1 * z1 + z2 * z2 + w * w);
  };
}

Symbol sigma_a(double hp1, double a) {
  return [hp1, a](double xi, double z1, double z2) {
    const cplx w(xi, a);
    return std::sqrt(hp1 + 1.0 / (1.0 + z1 * z1 + z2 * z2 + w * w));
  };
}

}  // namespace symbols

}  // namespace iaw
