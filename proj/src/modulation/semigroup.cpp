#include "modulation/semigroup.hpp"

#include <unsupported/Eigen/MatrixFunctions>

#include <cmath>

#include "core/error.hpp"

namespace iaw {

using cd = std::complex<double>;

Mat2 ModulationSymbol::generator() const {
  Mat2 a;
  a << a11(), z, -l1 * l1 * z, a22();
  return a;
}

ModulationSymbol modulation_symbol_limit(double V, double c0, double nu, double z) {
  require(c0 > V, Errc::invalid_argument, "modulation symbol needs a supersonic frame speed c0 > V");
  const double eps = std::sqrt(c0 - V);
  ModulationSymbol s;
  s.l1 = eps * std::sqrt(2.0 * V / 3.0);
  s.l2 = std::sqrt(2.0 * V) / (3.0 * eps);
  s.nu = nu;
  s.z = z;
  return s;
}

Mat2 modulation_semigroup(const ModulationSymbol& s, double t) {
  require(s.l1 > 0.0 && s.z >= 0.0, Errc::invalid_argument, "modulation semigroup needs l1 > 0 and z >= 0");
  const double w2 = s.omega2();
  require(w2 > 0.0, Errc::domain, "omega^2 <= 0: transverse wavenumber too large for the oscillatory regime");
  const double w = std::sqrt(w2);
  const double b = s.l1 * s.z * w;
  const double cb = std::cos(b * t);
  // sin(bt)/(l1 w) stays finite as z -> 0
  const double sb_over = b == 0.0 ? s.z * t : std::sin(b * t) / (s.l1 * w);
  const double nz = s.nu * s.z / (s.l1 * w);
  const double sb = std::sin(b * t);
  Mat2 m;
  m << cb + nz * sb, sb_over, -s.l1 * s.l1 * sb_over, cb - nz * sb;
  return std::exp(-s.l2 * s.z * s.z * t) * m;
}

Mat2 expm_oracle(const Mat2& a, double t) {
  const Mat2 ta = t * a;
  return ta.exp();
}

Mat2 expm2(const Mat2& m, double t) {
  const cd half_tr = 0.5 * m.trace();
  const Mat2 n = m - half_tr * Mat2::Identity();
  // n^2 = -det(n) I
  const cd delta = std::sqrt(-n.determinant());
  const cd x = t * delta;
  const cd ch = std::cosh(x);
  const cd shc = std::abs(x) < 1e-4 ? t * (1.0 + x * x / 6.0 + x * x * x * x / 120.0) : std::sinh(x) / delta;
  return std::exp(t * half_tr) * (ch * Mat2::Identity() + shc * n);
}

Mat2 modulation_correction(const ModulationSymbol& s, double kappa) {
  const double z = s.z, z2 = z * z;
  Mat2 c;
  c << kappa * s.l2 * z2 * z2, kappa * z2 * z, -kappa * s.l1 * s.l1 * z2 * z, kappa * s.l2 * z2 * z2;
  return c;
}

}  // namespace iaw
