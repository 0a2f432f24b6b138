#include "linear/kp_modes.hpp"

#include <cmath>

#include "core/error.hpp"
#include "core/spectral.hpp"
#include "profiles/kdv.hpp"

namespace iaw {

namespace {

using cd = std::complex<double>;

// e^{-b x} sech x without overflow, for Re b in (-1, 1) shifted arguments
cd exp_sech(cd b, double x) {
  // sech x = 2 e^{-|x|} / (1 + e^{-2|x|})
  const double ax = std::abs(x);
  return 2.0 * std::exp(-b * x - ax) / (1.0 + std::exp(-2.0 * ax));
}

}  // namespace

cd kp_lambda(double V, double eta) {
  return std::sqrt(2.0 * V / 3.0) * cd(0.0, eta) * std::sqrt(cd(1.0, 2.0 * eta / std::sqrt(3.0)));
}

ComplexField kp_apply_weighted(const PressureLaw& law, double eta, double a, const ComplexField& f) {
  const double V = law.V(), C = law.C();
  // (1 - C Psi) f - f''/(2V), then the outer derivative, plus (V/2) eta^2 dx^{-1}
  auto s = forward(f);
  FullSpectrum dxx = s, inv = s;
  for (std::size_t i = 0; i < s.c.size(); ++i) {
    const cd da(-a, s.k(i)[0]);
    dxx.c[i] *= da * da;
    inv.c[i] /= da;
  }
  ComplexField f2 = inverse(dxx), fi = inverse(inv);
  ComplexField inner(f.grid);
  for (std::size_t j = 0; j < f.size(); ++j) {
    const double x = f.grid.coord(0, j);
    inner.v[j] = (1.0 - C * kdv_soliton(law, x)) * f.v[j] - f2.v[j] / (2.0 * V);
  }
  auto si = forward(inner);
  for (std::size_t i = 0; i < si.c.size(); ++i) si.c[i] *= cd(-a, si.k(i)[0]);
  ComplexField out = inverse(si);
  for (std::size_t j = 0; j < f.size(); ++j) out.v[j] += 0.5 * V * eta * eta * fi.v[j];
  return out;
}

KpMode kp_mode(const PressureLaw& law, double eta, const KpLine& line) {
  require(eta != 0.0, Errc::domain, "the dual mode is singular at eta = 0; use the regularized basis");
  require(std::abs(eta) <= 1.0, Errc::invalid_argument, "closed-form modes are used for |eta| <= 1");
  const double V = law.V(), C = law.C();
  const double k = std::sqrt(0.5 * V);
  const double a = line.weight < 0.0 ? 0.8 * k : line.weight;
  const double et = 2.0 * eta / std::sqrt(3.0);
  const double dstar = -3.0 * V / C;
  const cd beta = std::sqrt(cd(1.0, et));
  const cd gamma = std::sqrt(cd(1.0, -et));

  Grid g = Grid::line(line.n, line.length);
  KpMode m;
  m.eta = eta;
  m.lambda = kp_lambda(V, eta);
  m.g0 = ComplexField(g, "g0");
  m.g0_star = ComplexField(g, "g0_star");
  ComplexField weighted(g);
  for (std::size_t j = 0; j < g.size(); ++j) {
    const double x = g.coord(0, j), xt = k * x;
    const double th = std::tanh(xt), sh = 1.0 / std::cosh(xt);
    const cd es = exp_sech(beta, xt);
    m.g0.v[j] = k * dstar / beta * es * ((beta + th) * (beta + th) - sh * sh);
    m.g0_star.v[j] = cd(0.0, std::sqrt(3.0) / (4.0 * dstar * eta)) * exp_sech(-gamma, xt) * (gamma - th);
    // fold the weight into the exponent so nothing overflows
    weighted.v[j] = k * dstar / beta * exp_sech(beta - a / k, xt) * ((beta + th) * (beta + th) - sh * sh);
  }
  ComplexField Lg = kp_apply_weighted(law, eta, a, weighted);
  ComplexField r(g);
  for (std::size_t j = 0; j < g.size(); ++j) r.v[j] = Lg.v[j] - m.lambda * weighted.v[j];
  m.residual = l2_norm(r) / (std::abs(m.lambda) * l2_norm(weighted));
  cd s = 0.0;
  for (std::size_t j = 0; j < g.size(); ++j) s += m.g0.v[j] * std::conj(m.g0_star.v[j]);
  m.pairing = s * g.dx(0);
  return m;
}

KpZeroBasis kp_zero_basis(const PressureLaw& law, const Grid& line) {
  const double V = law.V(), C = law.C(), k = std::sqrt(0.5 * V);
  KpZeroBasis b{RealField(line, "g01"), RealField(line, "g02")};
  for (std::size_t j = 0; j < line.size(); ++j) {
    const double x = line.coord(0, j);
    const double th = std::tanh(k * x), sh = 1.0 / std::cosh(k * x);
    const double v0 = 3.0 * V / C * sh * sh;
    const double dv0 = -2.0 * k * th * v0;
    const double v10 = v0 + 0.5 * x * dv0;
    b.g01.v[j] = dv0;
    b.g02.v[j] = -dv0 / std::sqrt(3.0) - std::sqrt(2.0 * V / 3.0) * v10;
  }
  return b;
}

}  // namespace iaw
