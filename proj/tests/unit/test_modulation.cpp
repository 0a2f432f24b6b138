#include <doctest.h>

#include <cmath>

#include "core/error.hpp"
#include "core/fit.hpp"
#include "core/spectral.hpp"
#include "modulation/decay.hpp"
#include "modulation/recover.hpp"
#include "modulation/semigroup.hpp"

using namespace iaw;

TEST_CASE("closed-form semigroup against the Pade oracle") {
  const double V = std::sqrt(2.0), c0 = V + 0.01;
  for (double z : {1e-3, 3e-3, 1e-2, 3e-2, 5e-2})
    for (double t : {0.1, 1.0, 10.0}) {
      const auto s = modulation_symbol_limit(V, c0, 0.5, z);
      const Mat2 a = modulation_semigroup(s, t), b = expm_oracle(s.generator(), t);
      CHECK((a - b).norm() / b.norm() < 1e-13);
    }
}

TEST_CASE("semigroup property and generator") {
  const auto s = modulation_symbol_limit(std::sqrt(2.0), std::sqrt(2.0) + 0.01, 0.5, 0.02);
  const Mat2 ab = modulation_semigroup(s, 0.7) * modulation_semigroup(s, 1.1);
  CHECK((ab - modulation_semigroup(s, 1.8)).norm() < 1e-13);
  const double h = 1e-6;
  const Mat2 d = (modulation_semigroup(s, h) - modulation_semigroup(s, -h)) / (2.0 * h);
  CHECK((d - s.generator()).norm() < 1e-8);
}

TEST_CASE("limit constants") {
  const double V = std::sqrt(2.0), eps = 0.1;
  const auto s = modulation_symbol_limit(V, V + eps * eps, 0.0, 0.01);
  CHECK(s.l1 == doctest::Approx(eps * std::sqrt(2.0 * V / 3.0)));
  CHECK(s.l2 == doctest::Approx(std::sqrt(2.0 * V) / (3.0 * eps)));
}

TEST_CASE("Y2 data decays at rate one half") {
  std::vector<double> ts;
  for (int i = 0; i <= 25; ++i) ts.push_back(std::pow(10.0, 1.0 + 0.2 * i));
  const DecayOptions o;
  const auto tr = linear_modulation_decay(y2_data(o.eta0), ts, o);
  std::vector<double> n0;
  for (const auto& x : tr) n0.push_back(x.norm[0]);
  const LineFit f = fit_decay_exponent(ts, n0, 1e4, 1e6);
  CHECK(f.slope >= -0.65);
  CHECK(f.slope <= -0.38);
  CHECK(f.slope == doctest::Approx(-0.506281).epsilon(1e-5));
}

TEST_CASE("longitudinal recovery") {
  const PressureLaw law = PressureLaw::isothermal();
  const double c0 = law.V() + 0.01;
  const Grid g = Grid::line(2048, 400.0);
  RealField h1(g), h2(g);
  for (std::size_t i = 0; i < 2048; ++i) {
    const double x = g.coord(0, i);
    h1[i] = std::exp(-x * x / 4.0);
    h2[i] = x * std::exp(-(x - 3.0) * (x - 3.0) / 9.0);
  }
  const Recovery r = recover_longitudinal(h1, h2, c0, law);
  CHECK(r.residual < 1e-10);
  CHECK(r.system_residual < 1e-10);
  CHECK(r.b == doctest::Approx(c0 * c0 - 2.0));
  CHECK(r.d == doctest::Approx(c0 * c0 - 1.0));
  // kernel decays like exp(-sqrt(b/d)|z|), no pi in the exponent
  const RealField rhs = c0 * h1 + h2;
  const RealField gc = green_convolve(rhs - derivative(rhs, 0, 2), r.b, r.d);
  CHECK(l2_norm(gc + r.dz_n) / l2_norm(r.dz_n) < 1e-3);

  for (double c : {law.V(), law.V() - 0.01}) {
    try {
      recover_longitudinal(h1, h2, c, law);
      FAIL("subsonic speed accepted");
    } catch (const Error& e) {
      CHECK(e.code() == Errc::domain);
    }
  }
  // box shorter than the kernel needs
  CHECK_THROWS_AS(recover_longitudinal(RealField(Grid::line(64, 20.0)), RealField(Grid::line(64, 20.0)), c0, law), Error);
}
