#include "sim/experiment.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>

#include "core/error.hpp"
#include "core/field_io.hpp"
#include "core/fit.hpp"
#include "core/spectral.hpp"
#include "linear/operator.hpp"
#include "sim/diagnostics.hpp"
#include "sim/extract.hpp"
#include "sim/stepper.hpp"

namespace iaw {

namespace {

using clock_type = std::chrono::steady_clock;

double seconds_since(clock_type::time_point t0) {
  return std::chrono::duration<double>(clock_type::now() - t0).count();
}

std::string list_text(const std::vector<double>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ", " : "") + fmt17(v[i]);
  return s;
}

// number of steps of at most dt_max that cover span exactly
std::size_t steps_for(double span, double dt_max) {
  return static_cast<std::size_t>(std::ceil(span / dt_max * (1.0 - 1e-12)));
}

}  // namespace

ExperimentConfig ExperimentConfig::from(const Config& c) {
  ExperimentConfig e;
  e.law = c.get("wave.law", e.law);
  e.eps = c.get("wave.eps", e.eps);
  const int nx = c.get("grid.nx", static_cast<int>(e.nx));
  const int ny = c.get("grid.ny", static_cast<int>(e.ny));
  require(nx >= 16 && ny >= 1, Errc::invalid_argument, "grid.nx must be >= 16 and grid.ny >= 1");
  e.nx = static_cast<std::size_t>(nx);
  e.ny = static_cast<std::size_t>(ny);
  e.lx = c.get("grid.lx", e.lx);
  e.ly = c.get("grid.ly", e.ly);
  e.t_end = c.get("run.t_end", e.t_end);
  e.sample_every = c.get("run.sample_every", e.sample_every);
  e.dt = c.get("run.dt", e.dt);
  e.cfl = c.get("run.cfl", e.cfl);
  e.snapshots = c.get_list("run.snapshots", e.snapshots);

  Perturbation& p = e.perturbation;
  p.parity = c.get("perturbation.parity", p.parity);
  p.amplitude = c.get("perturbation.amplitude", p.amplitude);
  p.x0 = c.get("perturbation.x0", p.x0);
  p.width = c.get("perturbation.width", p.width);
  p.transverse_mode = c.get("perturbation.transverse_mode", p.transverse_mode);
  p.transverse_width = c.get("perturbation.transverse_width", p.transverse_width);
  p.psi_ratio = c.get("perturbation.psi_ratio", p.psi_ratio);
  const std::string seed = c.get("perturbation.seed", std::to_string(p.seed));
  try {
    p.seed = std::stoull(seed);
  } catch (const std::exception&) {
    fail(Errc::invalid_argument, "perturbation.seed must be a non-negative integer");
  }

  e.weight = c.get("weight.a", e.weight);
  e.family_dc = c.get("modulation.dc", e.family_dc);
  e.family_nodes = c.get("modulation.nodes", e.family_nodes);
  e.cutoff = c.get("modulation.cutoff", e.cutoff);
  e.sponge_width = c.get("sponge.width", e.sponge_width);
  e.sponge_strength = c.get("sponge.strength", e.sponge_strength);
  e.poisson.tol = c.get("poisson.tol", e.poisson.tol);
  e.poisson.max_iter = c.get("poisson.max_iter", e.poisson.max_iter);
  c.require_all_used();

  require(e.eps > 0.0, Errc::invalid_argument, "wave.eps must be positive");
  require(e.lx > 0.0 && (e.ny == 1 || e.ly > 0.0), Errc::invalid_argument, "grid lengths must be positive");
  require(e.t_end >= 0.0 && e.sample_every > 0.0, Errc::invalid_argument, "run.t_end >= 0 and run.sample_every > 0");
  const double k = e.t_end / e.sample_every;
  require(std::abs(k - std::round(k)) < 1e-9, Errc::invalid_argument, "run.t_end must be a multiple of run.sample_every");
  require(e.cfl > 0.0 && e.dt >= 0.0, Errc::invalid_argument, "run.cfl must be positive and run.dt non-negative");
  return e;
}

Config ExperimentConfig::resolved() const {
  Config c;
  c.set("wave.law", law);
  c.set("wave.eps", fmt17(eps));
  c.set("grid.nx", std::to_string(nx));
  c.set("grid.ny", std::to_string(ny));
  c.set("grid.lx", fmt17(lx));
  c.set("grid.ly", fmt17(ly));
  c.set("run.t_end", fmt17(t_end));
  c.set("run.sample_every", fmt17(sample_every));
  c.set("run.dt", fmt17(dt));
  c.set("run.cfl", fmt17(cfl));
  c.set("run.snapshots", list_text(snapshots));
  c.set("perturbation.parity", perturbation.parity);
  c.set("perturbation.amplitude", fmt17(perturbation.amplitude));
  c.set("perturbation.x0", fmt17(perturbation.x0));
  c.set("perturbation.width", fmt17(perturbation.width));
  c.set("perturbation.transverse_mode", std::to_string(perturbation.transverse_mode));
  c.set("perturbation.transverse_width", fmt17(perturbation.transverse_width));
  c.set("perturbation.psi_ratio", fmt17(perturbation.psi_ratio));
  c.set("perturbation.seed", std::to_string(perturbation.seed));
  c.set("weight.a", fmt17(a()));
  c.set("modulation.dc", fmt17(family_dc < 0.0 ? 0.25 * eps * eps : family_dc));
  c.set("modulation.nodes", std::to_string(family_nodes));
  c.set("modulation.cutoff", fmt17(cutoff));
  c.set("sponge.width", fmt17(sponge_width));
  c.set("sponge.strength", fmt17(sponge_strength));
  c.set("poisson.tol", fmt17(poisson.tol));
  c.set("poisson.max_iter", std::to_string(poisson.max_iter));
  return c;
}

Grid ExperimentConfig::grid() const { return ny == 1 ? Grid::line(nx, lx) : Grid::plane(nx, lx, ny, ly); }

CsvTable TimeSeries::table() const {
  CsvTable t({"t", "mass", "hamiltonian", "weighted_norm", "sup_norm", "c_tilde_inf", "gamma_inf", "c_mean", "gamma_mean",
              "absorbed_mass", "absorbed_energy", "misfit"});
  for (const auto& r : records)
    t.add({r.t, r.mass, r.hamiltonian, r.weighted_norm, r.sup_norm, r.c_tilde_inf, r.gamma_inf, r.c_mean, r.gamma_mean,
           r.absorbed_mass, r.absorbed_energy, r.misfit});
  return t;
}

double TimeSeries::mass_drift() const {
  double d = 0.0;
  if (records.empty()) return d;
  const double m0 = records.front().mass;
  for (const auto& r : records) d = std::max(d, std::abs(r.mass + r.absorbed_mass - m0) / std::abs(m0));
  return d;
}

double TimeSeries::hamiltonian_drift() const {
  double d = 0.0;
  if (records.empty()) return d;
  const double h0 = records.front().hamiltonian;
  for (const auto& r : records) d = std::max(d, std::abs(r.hamiltonian + r.absorbed_energy - h0) / std::abs(h0));
  return d;
}

struct Experiment::Impl {
  PressureLaw law;
  Grid grid;
  SimState s;
  WaveFamily fam;
  ExtractOptions xo;
  Stepper st;
  Modulation m;
  bool have_guess = false;

  static SimState initial(const ExperimentConfig& cfg, const PressureLaw& law, const Grid& grid, SimState& ref) {
    SimState s = soliton_state(law, cfg.eps, grid);
    ref = s;
    Perturbation p = cfg.perturbation;
    p.weight = cfg.a();
    add_perturbation(s, perturbation_fields(p, grid));
    return s;
  }
  static StepperOptions stepper_options(const ExperimentConfig& cfg) {
    StepperOptions so;
    so.cfl = cfg.cfl;
    so.poisson = cfg.poisson;
    so.sponge_width = cfg.sponge_width;
    so.sponge_strength = cfg.sponge_strength;
    return so;
  }

  Impl(const ExperimentConfig& cfg, SimState ref = {})
      : law(PressureLaw::parse(cfg.law)),
        grid(cfg.grid()),
        s(initial(cfg, law, grid, ref)),
        fam(law, s.c0, Grid::line(cfg.nx, cfg.lx), cfg.family_dc < 0.0 ? 0.25 * cfg.eps * cfg.eps : cfg.family_dc,
            cfg.family_nodes),
        st(grid, law, s.c0, stepper_options(cfg)) {
    xo.weight = cfg.a();
    xo.cutoff = cfg.cutoff;
    if (cfg.sponge_width > 0.0) st.set_sponge_reference(ref);
  }
};

Experiment::Experiment(const ExperimentConfig& cfg) : cfg_(cfg), impl_(new Impl(cfg)) {
  const std::size_t per = steps_for(cfg.sample_every, cfg.dt > 0.0 ? cfg.dt : impl_->st.max_dt(impl_->s));
  dt_ = cfg.sample_every / static_cast<double>(per);
}

Experiment::~Experiment() { delete impl_; }

const SimState& Experiment::state() const { return impl_->s; }
std::size_t Experiment::poisson_solves() const { return impl_->st.poisson_solves(); }

void Experiment::advance_to(double t) {
  SimState& s = impl_->s;
  const double k = (t - s.t) / dt_;
  require(k > -1e-9, Errc::invalid_argument, "cannot advance backwards in time");
  require(std::abs(k - std::round(k)) < 1e-6, Errc::invalid_argument, "target time is not on the step grid");
  const auto n = static_cast<std::size_t>(std::llround(k));
  for (std::size_t i = 0; i < n; ++i) impl_->st.step(s, dt_);
  steps_ += n;
  s.t = t;
}

SeriesRecord Experiment::sample() {
  Impl& d = *impl_;
  const SimState& s = d.s;
  d.m = extract_modulation(s, d.fam, d.xo, d.have_guess ? &d.m : nullptr);
  d.have_guess = true;
  const Modulation& m = d.m;
  const Conserved q = conserved_quantities(s);
  SeriesRecord r;
  r.t = s.t;
  r.mass = q.mass;
  r.hamiltonian = q.hamiltonian;
  r.weighted_norm = weighted_perturbation_norm(s, d.fam, m, cfg_.a());
  r.sup_norm = perturbation_sup(s, d.fam, m);
  const double k = static_cast<double>(m.c.size());
  for (std::size_t j = 0; j < m.c.size(); ++j) {
    r.c_mean += m.c[j] / k;
    r.gamma_mean += m.gamma[j] / k;
    r.misfit = std::max(r.misfit, m.misfit[j]);
  }
  // in 2D the transverse mean of gamma is a rigid shift, not a modulation
  const double gshift = d.grid.dims() == 2 ? r.gamma_mean : 0.0;
  for (std::size_t j = 0; j < m.c.size(); ++j) {
    r.c_tilde_inf = std::max(r.c_tilde_inf, std::abs(m.c[j] - s.c0));
    r.gamma_inf = std::max(r.gamma_inf, std::abs(m.gamma[j] - gshift));
  }
  r.c_mean -= s.c0;
  r.absorbed_mass = d.st.absorbed_mass();
  r.absorbed_energy = d.st.absorbed_energy();
  return r;
}

TimeSeries run_experiment(const ExperimentConfig& cfg, const std::string& out_dir, const Progress& progress) {
  const auto t0 = clock_type::now();
  Experiment ex(cfg);
  TimeSeries ts;
  ts.dt = ex.dt();
  const auto samples = static_cast<std::size_t>(std::llround(cfg.t_end / cfg.sample_every));

  if (!out_dir.empty()) std::filesystem::create_directories(out_dir);
  std::vector<double> snaps = cfg.snapshots;
  std::sort(snaps.begin(), snaps.end());
  for (double t : snaps)
    require(t >= 0.0 && t <= cfg.t_end, Errc::invalid_argument, "snapshot times must lie in [0, run.t_end]");

  // snapshots fall on the step grid; sampling points are kept exact
  std::vector<double> stops;
  for (std::size_t k = 0; k <= samples; ++k) stops.push_back(cfg.sample_every * static_cast<double>(k));
  for (double t : snaps) stops.push_back(std::round(t / ts.dt) * ts.dt);
  std::sort(stops.begin(), stops.end());
  stops.erase(std::unique(stops.begin(), stops.end(), [&](double a, double b) { return std::abs(a - b) < 0.5 * ts.dt; }),
              stops.end());

  std::size_t next_snap = 0;
  for (double t : stops) {
    ex.advance_to(t);
    const double k = t / cfg.sample_every;
    if (std::abs(k - std::round(k)) < 1e-9) {
      ts.records.push_back(ex.sample());
      if (progress) progress(ts.records.back());
    }
    while (next_snap < snaps.size() && std::abs(std::round(snaps[next_snap] / ts.dt) * ts.dt - t) < 0.5 * ts.dt) {
      if (!out_dir.empty()) {
        char tag[64];
        std::snprintf(tag, sizeof tag, "snap_t%08.3f", t);
        const std::string base = (std::filesystem::path(out_dir) / tag).string();
        write_field(base + "_n", ex.state().n);
        write_field(base + "_psi", ex.state().psi);
        ts.snapshot_files.push_back(std::string(tag) + "_n");
        ts.snapshot_files.push_back(std::string(tag) + "_psi");
      }
      ++next_snap;
    }
  }
  ts.steps = ex.steps();
  ts.poisson_solves = ex.poisson_solves();
  ts.runtime = seconds_since(t0);
  return ts;
}

Stationarity stationarity_run(const PressureLaw& law, double eps, std::size_t n, double length, double t_end) {
  const auto t0 = clock_type::now();
  const Grid g = Grid::line(n, length);
  SimState s = soliton_state(law, eps, g);
  const SimState s0 = s;
  const Conserved q0 = conserved_quantities(s);
  Stepper st(g, law, s.c0);
  const std::size_t steps = steps_for(t_end, st.max_dt(s));
  Stationarity out;
  out.dt = t_end / static_cast<double>(steps);
  for (std::size_t k = 0; k < steps; ++k) {
    st.step(s, out.dt);
    if (k % 64 == 63 || k + 1 == steps) {
      const Conserved q = conserved_quantities(s);
      out.mass_drift = std::max(out.mass_drift, std::abs(q.mass - q0.mass) / std::abs(q0.mass));
      out.hamiltonian_drift = std::max(out.hamiltonian_drift, std::abs(q.hamiltonian - q0.hamiltonian) / std::abs(q0.hamiltonian));
    }
  }
  out.drift = sup_norm(s.n - s0.n);
  out.runtime = seconds_since(t0);
  return out;
}

Richardson richardson_check(const ExperimentConfig& cfg, double t_end) {
  const PressureLaw law = PressureLaw::parse(cfg.law);
  const Grid grid = cfg.grid();
  SimState s0 = soliton_state(law, cfg.eps, grid);
  const SimState ref = s0;
  Perturbation p = cfg.perturbation;
  p.weight = cfg.a();
  add_perturbation(s0, perturbation_fields(p, grid));

  StepperOptions so;
  so.cfl = cfg.cfl;
  so.poisson = cfg.poisson;
  so.poisson.tol = std::min(so.poisson.tol, 1e-13);
  so.sponge_width = cfg.sponge_width;
  so.sponge_strength = cfg.sponge_strength;

  Richardson r;
  {
    Stepper probe(grid, law, s0.c0, so);
    r.dt = t_end / static_cast<double>(steps_for(t_end, probe.max_dt(s0)));
  }
  std::vector<SimState> ends;
  for (int level = 0; level < 3; ++level) {
    Stepper st(grid, law, s0.c0, so);
    if (cfg.sponge_width > 0.0) st.set_sponge_reference(ref);
    SimState s = s0;
    const double dt = r.dt / static_cast<double>(1 << level);
    const std::size_t steps = static_cast<std::size_t>(std::llround(t_end / dt));
    for (std::size_t k = 0; k < steps; ++k) st.step(s, dt);
    ends.push_back(std::move(s));
  }
  auto dist = [](const SimState& a, const SimState& b) {
    return l2_norm(a.n - b.n) + l2_norm(derivative(a.psi - b.psi, 0));
  };
  r.e1 = dist(ends[0], ends[1]);
  r.e2 = dist(ends[1], ends[2]);
  require(r.e2 > 0.0, Errc::domain, "time-step refinement left the solution unchanged");
  r.order = std::log2(r.e1 / r.e2);
  return r;
}

LinearResponse linear_response(const PressureLaw& law, double eps, std::size_t n, double length,
                               const std::vector<double>& deltas) {
  require(deltas.size() >= 3, Errc::invalid_argument, "linear response needs at least 3 amplitudes");
  const Grid g = Grid::line(n, length);
  const SolitaryWave w = sagdeev_profile_eps(law, eps, g);
  const SimState base = soliton_state(law, eps, g);
  Perturbation p;
  p.x0 = 0.0;
  p.width = 2.0 / eps;
  p.amplitude = 1.0;
  const PerturbationFields pf = perturbation_fields(p, g);

  StepperOptions so;
  so.poisson.tol = 1e-14;
  Stepper st(g, law, base.c0, so);
  const FieldRates f0 = st.full_rhs(base);
  const LinearizedOperator L(w, 0.0, 0.0);
  const FieldPair lp = L.apply({pf.n, pf.psi});

  LinearResponse out;
  for (double d : deltas) {
    SimState s = base;
    add_perturbation(s, pf, d);
    const FieldRates f = st.full_rhs(s);
    RealField en(g), ep(g);
    for (std::size_t i = 0; i < g.size(); ++i) {
      en[i] = f.n[i] - f0.n[i] - d * lp.n[i];
      ep[i] = f.psi[i] - f0.psi[i] - d * lp.psi[i];
    }
    // constants in psi carry no velocity
    const double pm = mean(ep);
    for (auto& x : ep.v) x -= pm;
    out.delta.push_back(d);
    out.defect.push_back(l2_norm(en) + l2_norm(ep));
  }
  out.slope = fit_order(out.delta, out.defect).slope;
  return out;
}

}  // namespace iaw
