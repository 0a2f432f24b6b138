#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <numbers>

#include "core/error.hpp"
#include "core/multiplier.hpp"
#include "core/spectral.hpp"
#include "sim/diagnostics.hpp"
#include "sim/experiment.hpp"
#include "sim/extract.hpp"
#include "sim/stepper.hpp"

using namespace iaw;

TEST_CASE("zero data is a fixed point") {
  const PressureLaw law = PressureLaw::isothermal();
  const Grid g = Grid::plane(64, 50.0, 8, 10.0);
  SimState s = zero_state(law, law.V() + 0.04, g);
  Stepper st(g, law, s.c0);
  for (int k = 0; k < 20; ++k) st.step(s, 0.1);
  CHECK(sup_norm(s.n) < 1e-14);
  CHECK(sup_norm(s.psi) < 1e-14);
  CHECK(std::abs(s.winding) < 1e-14);
}

TEST_CASE("solitary wave is stationary in its frame") {
  const PressureLaw law = PressureLaw::isothermal();
  const Grid g = Grid::line(512, 200.0);
  SimState s = soliton_state(law, 0.2, g);
  const RealField n0 = s.n;
  const auto rates = Stepper(g, law, s.c0).full_rhs(s);
  CHECK(sup_norm(rates.n) < 1e-8);
  CHECK(sup_norm(rates.psi) < 1e-8);
  Stepper st(g, law, s.c0);
  const Conserved q0 = conserved_quantities(s);
  const double dt = st.max_dt(s);
  for (int k = 0; k < 50; ++k) st.step(s, dt);
  const Conserved q = conserved_quantities(s);
  CHECK(sup_norm(s.n - n0) < 1e-5);
  CHECK(std::abs(q.mass - q0.mass) < 1e-12 * std::abs(q0.mass));
  CHECK(std::abs(q.hamiltonian - q0.hamiltonian) < 1e-9 * std::abs(q0.hamiltonian));
}

TEST_CASE("absorbing layer keeps the mass and energy books balanced") {
  ExperimentConfig c;
  c.nx = 1024;
  c.lx = 200.0;
  c.t_end = 20.0;
  c.sample_every = 5.0;
  c.sponge_width = 50.0;
  c.perturbation.amplitude = 1e-2;
  c.perturbation.x0 = -20.0;
  const TimeSeries ts = run_experiment(c);
  REQUIRE(ts.records.size() == 5);
  CHECK(ts.records.back().absorbed_mass != 0.0);
  CHECK(ts.mass_drift() < 1e-12);
  CHECK(ts.hamiltonian_drift() < 1e-8);
  for (std::size_t k = 1; k < ts.records.size(); ++k) CHECK(ts.records[k].t > ts.records[k - 1].t);
}

TEST_CASE("second order in time") {
  ExperimentConfig c;
  c.nx = 512;
  c.lx = 200.0;
  c.sponge_width = 0.0;
  c.perturbation.amplitude = 1e-2;
  const Richardson r = richardson_check(c, 2.0);
  CHECK(r.order == doctest::Approx(2.0).epsilon(0.05));
}

TEST_CASE("vector field linearizes to the assembled operator") {
  const LinearResponse lr = linear_response(PressureLaw::isothermal(), 0.2, 512, 200.0, {1e-2, 1e-3, 1e-4});
  CHECK(lr.slope >= 1.9);
  CHECK(lr.defect.back() < 1e-7);
}

TEST_CASE("extraction recovers manufactured modulations") {
  const PressureLaw law = PressureLaw::isothermal();
  const double eps = 0.2, c0 = law.V() + eps * eps;
  const Grid pl = Grid::plane(512, 200.0, 16, 100.0);
  const WaveFamily fam(law, c0, Grid::line(512, 200.0), 0.25 * eps * eps);
  std::vector<double> cc(16), gg(16);
  for (std::size_t j = 0; j < 16; ++j) {
    const double y = pl.coord(1, j);
    cc[j] = c0 + 2e-3;
    gg[j] = 0.3 * std::cos(2.0 * std::numbers::pi * y / 100.0);
  }
  const SimState s = modulated_state(law, fam, pl, cc, gg);
  ExtractOptions o;
  o.weight = 0.25 * eps;
  const Modulation m = extract_modulation(s, fam, o);
  for (std::size_t j = 0; j < 16; ++j) {
    CHECK(std::abs(m.c[j] - cc[j]) < 1e-5);
    CHECK(std::abs(m.gamma[j] - gg[j]) < 1e-5);
  }
}

TEST_CASE("experiment config") {
  const Config c = Config::parse("wave.eps = 0.15\ngrid.nx = 256\ngrid.lx = 100\nrun.t_end = 4\nrun.sample_every = 2\n");
  const ExperimentConfig e = ExperimentConfig::from(c);
  CHECK(e.eps == 0.15);
  CHECK(e.a() == doctest::Approx(0.0375));
  CHECK(ExperimentConfig::from(e.resolved()).resolved().dump() == e.resolved().dump());
  CHECK_THROWS_AS(ExperimentConfig::from(Config::parse("grid.nxx = 12\n")), Error);
  CHECK_THROWS_AS(ExperimentConfig::from(Config::parse("run.t_end = 5\nrun.sample_every = 2\n")), Error);
  // transverse data on a line is caught when the state is built
  CHECK_THROWS_AS(Experiment(ExperimentConfig::from(Config::parse("grid.nx = 256\ngrid.lx = 150\nperturbation.transverse_mode = 1\n"))), Error);
}

TEST_CASE("experiment stepping rules") {
  ExperimentConfig c;
  c.nx = 256;
  c.lx = 150.0;
  c.sponge_width = 0.0;
  c.t_end = 2.0;
  c.sample_every = 1.0;
  Experiment ex(c);
  CHECK_THROWS_AS(ex.advance_to(0.37 * ex.dt()), Error);
  ex.advance_to(1.0);
  CHECK_THROWS_AS(ex.advance_to(0.5), Error);
  const SeriesRecord r = ex.sample();
  CHECK(r.t == 1.0);
  CHECK(r.weighted_norm > 0.0);
}

TEST_CASE("snapshots land in the output directory") {
  ExperimentConfig c;
  c.nx = 256;
  c.lx = 150.0;
  c.sponge_width = 0.0;
  c.t_end = 2.0;
  c.sample_every = 1.0;
  c.snapshots = {0.0, 1.5};
  const std::string dir = (std::filesystem::temp_directory_path() / "iaw_unit" / "snaps").string();
  const TimeSeries ts = run_experiment(c, dir);
  REQUIRE(ts.snapshot_files.size() == 4);
  for (const auto& f : ts.snapshot_files) CHECK(std::filesystem::exists(dir + "/" + f + ".bin"));
}
