#include <doctest.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <numbers>
#include <stdexcept>

#include "core/csv.hpp"
#include "core/error.hpp"
#include "core/field_io.hpp"
#include "core/fit.hpp"
#include "core/parallel.hpp"
#include "core/poisson.hpp"
#include "core/spectral.hpp"
#include "sim/config.hpp"

using namespace iaw;
namespace fs = std::filesystem;

static std::string scratch(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / "iaw_unit" / name;
  fs::create_directories(p.parent_path());
  return p.string();
}

TEST_CASE("grid is symmetric about the origin") {
  const Grid g = Grid::line(64, 10.0);
  CHECK(g.coord(0, 0) == doctest::Approx(-5.0));
  CHECK(g.coord(0, 32) == doctest::Approx(0.0));
  CHECK(g.coord(0, 16) == doctest::Approx(-g.coord(0, 48)));
  const Grid p = Grid::plane(8, 2.0, 16, 1.0);
  CHECK(p.size() == 128);
  const auto id = p.unravel(37);
  CHECK(id[0] == 2);
  CHECK(id[1] == 5);
}

TEST_CASE("spectral derivative of a resolved mode is exact") {
  const double L = 2.0 * std::numbers::pi;
  const Grid g = Grid::line(32, L);
  RealField f(g);
  for (std::size_t i = 0; i < 32; ++i) f[i] = std::sin(3.0 * g.coord(0, i));
  const RealField d = derivative(f, 0);
  double err = 0.0;
  for (std::size_t i = 0; i < 32; ++i) err = std::max(err, std::abs(d[i] - 3.0 * std::cos(3.0 * g.coord(0, i))));
  CHECK(err < 1e-12);
  const RealField back = inverse(forward(f));
  CHECK(sup_norm(back - f) < 1e-14);
}

TEST_CASE("poisson solve of zero density is zero") {
  const RealField n(Grid::line(64, 20.0));
  const auto r = poisson_newton(n);
  CHECK(sup_norm(r.phi) == 0.0);
}

TEST_CASE("poisson solve meets its tolerance") {
  const Grid g = Grid::line(256, 40.0);
  RealField n(g);
  for (std::size_t i = 0; i < 256; ++i) n[i] = 0.05 * std::exp(-g.coord(0, i) * g.coord(0, i) / 4.0);
  const auto r = poisson_newton(n);
  CHECK(poisson_residual(n, r.phi) < 1e-11);
}

TEST_CASE("csv round trip keeps every bit") {
  CsvTable t({"a", "b"});
  t.add({1.0 / 3.0, -std::exp(1.0) * 1e-300});
  t.add({std::numeric_limits<double>::infinity(), 0.1});
  t.set_tag("run_id", "abc-123");
  const std::string path = scratch("roundtrip.csv");
  t.write(path);
  const CsvTable r = CsvTable::read(path);
  REQUIRE(r.rows() == 2);
  CHECK(r.data()[0][0] == t.data()[0][0]);
  CHECK(r.data()[0][1] == t.data()[0][1]);
  CHECK(std::isinf(r.data()[1][0]));
  CHECK(r.tag() == "abc-123");
}

TEST_CASE("field files round trip") {
  const Grid g = Grid::plane(8, 1.0, 16, 2.0);
  RealField f(g, "n");
  for (std::size_t i = 0; i < f.size(); ++i) f[i] = std::sin(0.1 * i) / 7.0;
  const std::string base = scratch("field");
  write_field(base, f);
  const RealField r = read_field(base);
  CHECK(r.grid == g);
  CHECK(r.v == f.v);
}

TEST_CASE("decay fit recovers an exact power law") {
  std::vector<double> t, y, c;
  for (double s : {10.0, 20.0, 40.0, 80.0, 160.0}) {
    t.push_back(s);
    y.push_back(std::pow(1.0 + s, -4.0 / 3.0));
    c.push_back(2.5);
  }
  CHECK(fit_decay_exponent(t, y, 10, 160).slope == doctest::Approx(-4.0 / 3.0).epsilon(1e-10));
  CHECK(std::abs(fit_decay_exponent(t, c, 10, 160).slope) < 1e-12);
  y[2] = 0.0;
  CHECK_THROWS_AS(fit_decay_exponent(t, y, 10, 160), Error);
  CHECK_THROWS_AS(fit_decay_exponent(t, c, 10, 30), Error);  // fewer than four samples
}

TEST_CASE("config parsing") {
  const Config c = Config::parse("# comment\nwave.eps = 0.1  # trailing\ngrid.nx = 64\nrun.snapshots = 0, 5,10\n");
  CHECK(c.get("wave.eps", 0.0) == 0.1);
  CHECK(c.get("grid.nx", 0) == 64);
  CHECK(c.get_list("run.snapshots", {}) == std::vector<double>{0, 5, 10});
  CHECK(c.unused().empty());
  CHECK_THROWS_AS(Config::parse("novalue\n"), Error);
  CHECK_THROWS_AS(Config::parse("nodot = 1\n"), Error);
  CHECK_THROWS_AS(Config::parse("a.b = 1\na.b = 2\n"), Error);
  const Config d = Config::parse("a.b = x\n");
  CHECK_THROWS_AS(d.get("a.b", 1.0), Error);
  const Config e = Config::parse("a.b = 1\na.c = 2\n");
  e.get("a.b", 0.0);
  try {
    e.require_all_used();
    FAIL("unused key accepted");
  } catch (const Error& err) {
    CHECK(err.code() == Errc::invalid_argument);
    CHECK(std::string(err.what()).find("a.c") != std::string::npos);
  }
}

TEST_CASE("parallel_for covers every index and rethrows") {
  set_thread_count(3);
  std::vector<int> hit(100, 0);
  parallel_for(100, [&](std::size_t i) { hit[i] += 1; });
  CHECK(std::count(hit.begin(), hit.end(), 1) == 100);
  CHECK_THROWS_AS(parallel_for(10, [](std::size_t i) {
                    if (i == 7) throw std::runtime_error("seven");
                  }),
                  std::runtime_error);
  set_thread_count(0);
}

TEST_CASE("thread count from the environment") {
  set_thread_count(0);
  setenv("IAW_THREADS", "2", 1);
  CHECK(thread_count() == 2);
  setenv("IAW_THREADS", "two", 1);
  CHECK_THROWS_AS(thread_count(), Error);
  unsetenv("IAW_THREADS");
  set_thread_count(5);
  CHECK(thread_count() == 5);
  set_thread_count(0);
}
