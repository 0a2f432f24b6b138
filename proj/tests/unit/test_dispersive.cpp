#include <doctest.h>

#include <cmath>

#include "core/fit.hpp"
#include "dispersive/dispersion.hpp"
#include "dispersive/halfwave.hpp"
#include "dispersive/radial.hpp"

using namespace iaw;

TEST_CASE("inflection root") {
  const DispersionProfile P(1.0);
  CHECK(std::abs(P.inflection_closed_form() - P.inflection_bisection()) < 1e-10);
  CHECK(P.inflection_closed_form() == doctest::Approx(std::sqrt(1.0 + std::sqrt(7.0))).epsilon(1e-15));
  CHECK(std::abs(P.d2P(P.inflection_root())) < 1e-12);
  const DispersionProfile Q(0.3);
  CHECK(std::abs(Q.inflection_closed_form() - Q.inflection_bisection()) < 1e-10);
}

TEST_CASE("group speed bounds") {
  const DispersionProfile P(1.0);
  const double lo = P.dP(P.inflection_root());
  CHECK(lo == doctest::Approx(0.949155).epsilon(1e-5));
  for (int i = 0; i <= 20000; ++i) {
    const double r = 1e-3 * i;
    CHECK(P.dP(r) >= lo - 1e-12);
    CHECK(P.dP(r) <= std::sqrt(2.0) + 1e-12);
  }
}

TEST_CASE("halfwave flow is unitary and a group") {
  const DispersionProfile P(1.0);
  const Grid g({{16, 20.0}, {16, 20.0}, {16, 20.0}});
  ComplexField f(g);
  for (std::size_t i = 0; i < g.size(); ++i) {
    const auto id = g.unravel(i);
    double r2 = 0.0;
    for (int d = 0; d < 3; ++d) r2 += g.coord(d, id[d]) * g.coord(d, id[d]);
    f[i] = {std::exp(-r2 / 4.0), 0.1 * g.coord(0, id[0]) * std::exp(-r2 / 2.0)};
  }
  const ComplexField a = evolve_halfwave(f, 1.3, P);
  CHECK(std::abs(l2_norm(a) / l2_norm(f) - 1.0) < 1e-12);
  const ComplexField b = evolve_halfwave(evolve_halfwave(f, 0.5, P), 0.8, P);
  double d = 0.0;
  for (std::size_t i = 0; i < g.size(); ++i) d = std::max(d, std::abs(a[i] - b[i]));
  CHECK(d < 1e-12 * sup_norm(f));
}

TEST_CASE("radial and periodic evolutions agree") {
  const DispersionProfile P(1.0);
  const std::size_t N = 64;
  const double L = 64.0;
  const Grid g({{N, L}, {N, L}, {N, L}});
  RealField f(g);
  for (std::size_t i = 0; i < g.size(); ++i) {
    const auto id = g.unravel(i);
    double r2 = 0.0;
    for (int d = 0; d < 3; ++d) r2 += g.coord(d, id[d]) * g.coord(d, id[d]);
    f[i] = std::exp(-r2 / 2.0);
  }
  const HalfwaveEvolver ev(f, P);
  const HalfwaveResult r = ev.at(10.0);
  CHECK_FALSE(r.wrapped);
  const double centre = std::abs(evolve_radial(gaussian_data(1.0), P, 0.0, 10.0).u);
  const std::size_t mid = (N / 2) * N * N + (N / 2) * N + N / 2;
  CHECK(std::hypot(r.re[mid], r.im[mid]) == doctest::Approx(centre).epsilon(1e-3));
  CHECK(r.sup == doctest::Approx(radial_sup(gaussian_data(1.0), P, 10.0).sup).epsilon(2e-2));
}

TEST_CASE("Gaussian sup-norm decay") {
  const DispersionProfile P(1.0);
  const std::vector<double> ts{10, 20, 40, 80};
  std::vector<double> s;
  for (double t : ts) s.push_back(radial_sup(gaussian_data(1.0), P, t).sup);
  const LineFit f = fit_decay_exponent(ts, s, 10, 80);
  CHECK(f.slope >= -1.47);
  CHECK(f.slope <= -1.20);
  CHECK(f.slope == doctest::Approx(-1.25935).epsilon(1e-4));
}

TEST_CASE("filon panel integrates exactly on polynomials times a phase") {
  // int_{-1}^{1} e^{i w x} dx = 2 sin(w) / w
  std::complex<double> g[16];
  for (auto& v : g) v = 1.0;
  for (double w : {0.0, 0.5, 30.0, 400.0}) {
    const std::complex<double> exact = w == 0.0 ? 2.0 : 2.0 * std::sin(w) / w;
    CHECK(std::abs(filon_panel(g, w) - exact) < 1e-13);
  }
}
