#include <doctest.h>

#include <cmath>

#include "core/spectral.hpp"
#include "linear/eigencurve.hpp"
#include "linear/kp_modes.hpp"
#include "linear/operator.hpp"
#include "linear/symbols.hpp"

using namespace iaw;

TEST_CASE("zero mode of the unweighted operator") {
  const PressureLaw law = PressureLaw::isothermal();
  const SolitaryWave w = sagdeev_profile_eps(law, 0.1, Grid::line(2048, 400.0));
  const LinearizedOperator L0(w, 0.0, 0.0);
  const auto p = L0.apply_with_scale({derivative(w.n, 0), w.u});
  CHECK((l2_norm(p.total.n) + l2_norm(p.total.psi)) / p.scale < 1e-6);
}

TEST_CASE("dense matrix matches the matrix-free operator") {
  const PressureLaw law = PressureLaw::isothermal();
  const SolitaryWave w = sagdeev_profile_eps(law, 0.2, Grid::line(128, 200.0));
  const LinearizedOperator L(w, 0.02, 0.05);
  const Eigen::MatrixXd M = L.dense();
  FieldPair u{RealField(w.grid), RealField(w.grid)};
  Eigen::VectorXd x(256);
  for (std::size_t i = 0; i < 128; ++i) {
    const double s = w.grid.coord(0, i);
    u.n[i] = x[i] = std::exp(-s * s / 50.0);
    u.psi[i] = x[128 + i] = s * std::exp(-s * s / 80.0);
  }
  const FieldPair y = L.apply(u);
  const Eigen::VectorXd z = M * x;
  double err = 0.0, scale = 0.0;
  for (std::size_t i = 0; i < 128; ++i) {
    err = std::max({err, std::abs(z[i] - y.n[i]), std::abs(z[128 + i] - y.psi[i])});
    scale = std::max({scale, std::abs(y.n[i]), std::abs(y.psi[i])});
  }
  CHECK(err < 1e-10 * scale);
}

TEST_CASE("weight bound") {
  CHECK(max_weight(0.1) == doctest::Approx(std::sqrt(3.0) * 0.1 / 4.0));
  const PressureLaw law = PressureLaw::isothermal();
  const SolitaryWave w = sagdeev_profile_eps(law, 0.2, Grid::line(128, 200.0));
  CHECK_THROWS(LinearizedOperator(w, 0.0, 0.1));
}

TEST_CASE("small-amplitude curve constants") {
  const double V = std::sqrt(2.0);
  CHECK(lambda1_limit(V, 0.1) == doctest::Approx(0.1 * std::sqrt(2.0 * V / 3.0)).epsilon(1e-14));
  double l1 = 0.0, l2sq = 0.0;
  const double l2 = lambda2_limit_quadrature(V, V, 0.1, &l1, &l2sq);
  // v0 = (3V/C) sech^2(sqrt(V/2) x): |v0|_1 = 6 sqrt(2V) / C, |v0|_2^2 = 12 V sqrt(2V) / C^2
  CHECK(l1 == doctest::Approx(6.0 * std::sqrt(2.0 * V) / V).epsilon(1e-10));
  CHECK(l2sq == doctest::Approx(12.0 * std::sqrt(2.0 * V) / V).epsilon(1e-10));
  CHECK(l2 == doctest::Approx(std::sqrt(2.0 * V) / 3.0 / 0.1).epsilon(1e-10));
}

TEST_CASE("KP-II closed-form modes") {
  const PressureLaw law = PressureLaw::isothermal();
  for (double eta : {0.1, 0.2}) {
    const KpMode m = kp_mode(law, eta);
    CHECK(m.residual < 1e-8);
    CHECK(std::abs(m.pairing - 1.0) < 1e-12);
    CHECK(m.lambda == kp_lambda(law.V(), eta));
    CHECK(m.lambda.real() < 0.0);
  }
}

TEST_CASE("symbol scan under the weight constraint") {
  const double eps = 0.05;
  CHECK(weight_admissible(0.25, 1.0));
  CHECK_FALSE(weight_admissible(0.9, 1.0));
  const SymbolParams p{1.0, std::sqrt(2.0) + eps * eps, 0.25 * eps};
  const SymbolScan s = symbol_scan(p, 100, 100);
  CHECK(s.points == 10000);
  CHECK(s.max_re <= 1e-12);
  CHECK(s.max_re == doctest::Approx(-3.355561006e-05).epsilon(1e-8));
}

TEST_CASE("damping margins are positive") {
  RegionParams rp;
  for (auto r : {Region::uniform_high, Region::xi_high, Region::zeta_inner, Region::zeta_low}) {
    const Margin m = damping_margin(r, rp);
    CHECK_MESSAGE(m.margin > 0.0, region_name(r));
  }
  CHECK(damping_margin(Region::uniform_high, rp).margin == doctest::Approx(0.0052089507795).epsilon(1e-9));
  CHECK(damping_margin(Region::xi_high, rp).margin == doctest::Approx(6.359952749899e-05).epsilon(1e-9));
}

TEST_CASE("resonant pair on a coarse grid") {
  const PressureLaw law = PressureLaw::isothermal();
  const double eps = 0.2;
  const SolitaryWave w = sagdeev_profile_eps(law, eps, Grid::line(512, 40.0 / eps));
  const EigenSample s = resonant_pair(w, 0.03 * eps * eps, 0.25 * eps, {});
  CHECK(s.lambda.imag() > 0.0);
  CHECK(s.lambda.real() < 0.0);
  CHECK(s.separation >= 3.0);
  CHECK(std::abs(s.partner - std::conj(s.lambda)) < 1e-8 * std::abs(s.lambda));
  // leading order Im lambda = lambda1 eta
  CHECK(s.lambda.imag() / (0.03 * eps * eps) == doctest::Approx(lambda1_limit(law.V(), eps)).epsilon(0.1));
}
