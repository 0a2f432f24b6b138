#include <doctest.h>

#include <cmath>

#include "core/error.hpp"
#include "profiles/kdv.hpp"
#include "profiles/pressure_law.hpp"
#include "profiles/solitary_wave.hpp"

using namespace iaw;

TEST_CASE("isothermal constants") {
  const PressureLaw law = PressureLaw::isothermal();
  CHECK(law.V() == doctest::Approx(std::sqrt(2.0)).epsilon(1e-15));
  CHECK(law.C() == doctest::Approx(std::sqrt(2.0)).epsilon(1e-15));
  CHECK(law.h(std::exp(1.0)) == doctest::Approx(1.0).epsilon(1e-14));
  // small excess densities keep their relative accuracy
  CHECK(law.h_excess(1e-12) == doctest::Approx(1e-12).epsilon(1e-10));
  CHECK_THROWS_AS(law.h_excess(-1.0), Error);
}

TEST_CASE("enthalpy quadrature agrees with closed forms") {
  const PressureLaw p = PressureLaw::polytropic(1.0, 5.0 / 3.0);
  for (double z : {0.5, 1.0, 1.3, 2.0}) CHECK(p.h_quadrature(z) == doctest::Approx(p.h(z)).epsilon(1e-12));
  const PressureLaw q = PressureLaw::parse("poly:1,0.2");
  CHECK(q.hp1() == doctest::Approx(1.4));
  CHECK_THROWS_AS(PressureLaw::parse("steam"), Error);
}

TEST_CASE("profile at eps 0.1") {
  const PressureLaw law = PressureLaw::isothermal();
  const double eps = 0.1;
  const SolitaryWave w = sagdeev_profile_eps(law, eps, Grid::line(2048, 40.0 / eps));
  // amplitude against eps^2 3/C
  CHECK(sup_norm(w.n) / (eps * eps) == doctest::Approx(3.0 / law.C()).epsilon(0.05));
  // frozen from the reference run
  CHECK(sup_norm(w.n) / (eps * eps) == doctest::Approx(2.15594792).epsilon(1e-7));
  CHECK(w.phi_star == doctest::Approx(0.02102590951).epsilon(1e-9));
  CHECK(w.poisson_residual < 1e-9);
  CHECK(algebraic_residual(w) < 1e-12);
  CHECK(w.decay_rate == doctest::Approx(w.kappa).epsilon(1e-3));
  // even profile
  CHECK(std::abs(w.n[1024 - 100] - w.n[1024 + 100]) < 1e-12);
}

TEST_CASE("c derivative satisfies the linearized profile equations") {
  const PressureLaw law = PressureLaw::isothermal();
  const double eps = 0.1;
  const SolitaryWave w = sagdeev_profile_eps(law, eps, Grid::line(2048, 40.0 / eps));
  const auto r = c_derivative_residuals(w, profile_c_derivative(w, 1e-4 * eps * eps));
  CHECK(r.continuity < 1e-8);
  CHECK(r.bernoulli < 1e-8);
  CHECK(r.poisson < 1e-5);
}

TEST_CASE("KdV order of the rescaled error") {
  const PressureLaw law = PressureLaw::isothermal();
  std::vector<KdvErrors> es;
  for (double eps : {0.05, 0.1, 0.2}) es.push_back(kdv_rescale_error(sagdeev_profile_eps(law, eps, Grid::line(2048, 40.0 / eps))));
  const KdvOrder q = kdv_order_fit(es);
  CHECK(q.q >= 1.7);
  CHECK(q.q <= 2.3);
  CHECK(q.q == doctest::Approx(2.0478).epsilon(2e-4));
}

TEST_CASE("no solitary wave at or below the sound speed") {
  const PressureLaw law = PressureLaw::isothermal();
  CHECK_THROWS_AS(sagdeev_profile(law, law.V(), Grid::line(256, 100.0)), Error);
  CHECK_THROWS_AS(sagdeev_profile(law, 1.2, Grid::line(256, 100.0)), Error);
}

TEST_CASE("too short a box is rejected") {
  const PressureLaw law = PressureLaw::isothermal();
  CHECK_THROWS_AS(sagdeev_profile_eps(law, 0.05, Grid::line(256, 40.0)), Error);
}
