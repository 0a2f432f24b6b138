#include "app/acceptance.hpp"

#include <chrono>
#include <deque>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <limits>

#include "core/error.hpp"
#include "core/fit.hpp"

namespace iaw {

namespace fs = std::filesystem;

const char* const stability_1d_config = R"(# Even bump behind a weakly supersonic wave, 1D.
# The weighted perturbation norm should fall below half its initial value by t = 200.
wave.law = isothermal
wave.eps = 0.2
grid.nx = 4096
grid.lx = 400
run.t_end = 200
run.sample_every = 10
run.snapshots = 0, 100, 200
perturbation.parity = even
perturbation.amplitude = 1e-3
perturbation.x0 = 10
perturbation.width = 3
sponge.width = 100
sponge.strength = 3
)";

const char* const stability_2d_config = R"(# Transversely localized bump, one transverse direction.
# gamma_inf is tracked with its transverse mean removed.
wave.law = isothermal
wave.eps = 0.2
grid.nx = 1024
grid.lx = 400
grid.ny = 64
grid.ly = 200
run.t_end = 200
run.sample_every = 10
run.snapshots = 0, 200
perturbation.parity = even
perturbation.amplitude = 1e-3
perturbation.x0 = 10
perturbation.width = 3
perturbation.transverse_width = 12
sponge.width = 100
sponge.strength = 3
)";

const char* const smoke_2d_config = R"(# Short 2D conservation run, no absorbing layer.
wave.law = isothermal
wave.eps = 0.2
grid.nx = 512
grid.lx = 200
grid.ny = 32
grid.ly = 100
run.t_end = 50
run.sample_every = 10
perturbation.amplitude = 1e-2
perturbation.transverse_mode = 1
sponge.width = 0
)";

namespace {

using clock_type = std::chrono::steady_clock;

std::string num(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4g", x);
  return buf;
}

const Metric* find(const RunManifest& m, const std::string& name) {
  for (const auto& x : m.metrics())
    if (x.name == name) return &x;
  return nullptr;
}

// Collects the runs of one criterion.
class Criterion {
 public:
  Criterion(int id, std::string title, std::string dir) : id_(id), title_(std::move(title)), dir_(std::move(dir)) {}

  std::string sub(const std::string& name) const { return (fs::path(dir_) / name).string(); }

  const RunManifest& run(const std::string& command, const std::string& text, const std::string& out,
                         const Log& log) {
    runs_.push_back(run_command(command, Config::parse(text, "criterion " + std::to_string(id_)), out, log));
    return runs_.back();
  }
  void keep(RunManifest m) { runs_.push_back(std::move(m)); }

  void headline(const RunManifest& m, const std::string& metric, const std::string& label) {
    const Metric* x = find(m, metric);
    if (!detail_.empty()) detail_ += ", ";
    detail_ += label + " " + (x ? num(x->value) : std::string("missing"));
    if (!x) missing_ = true;
  }
  void limit(const std::string& name, double seconds, double bound) {
    limits_.push_back(Metric::at_most(name, seconds, bound));
  }

  CriterionResult finish(double runtime, RunManifest& summary) {
    CriterionResult r{id_, title_, "PASS", detail_, runtime};
    int failed = missing_ ? 1 : 0;
    for (const auto& m : runs_)
      for (const auto& x : m.metrics())
        if (!x.pass) ++failed;
    const std::string p = "c" + std::to_string(id_) + "/";
    for (auto x : limits_) {
      if (!x.pass) ++failed;
      x.name = p + x.name;
      summary.add(x);
    }
    summary.add(Metric::at_most(p + "failed_checks", failed, 0.0));
    if (failed) {
      r.status = "FAIL";
      r.detail += (r.detail.empty() ? "" : ", ") + std::to_string(failed) + " check(s) failed";
    }
    return r;
  }

 private:
  int id_;
  std::string title_, dir_, detail_;
  bool missing_ = false;
  std::deque<RunManifest> runs_;  // run() hands out references
  std::vector<Metric> limits_;
};

double since(clock_type::time_point t0) { return std::chrono::duration<double>(clock_type::now() - t0).count(); }

}  // namespace

bool AcceptanceReport::passed() const {
  for (const auto& c : criteria)
    if (c.status == "FAIL") return false;
  return true;
}

std::string format_criterion(const CriterionResult& c) {
  char buf[512];
  std::snprintf(buf, sizeof buf, "criterion %2d  %-4s  %-40s %8.1f s  %s", c.id, c.status.c_str(), c.title.c_str(),
                c.runtime, c.detail.c_str());
  return buf;
}

AcceptanceReport run_acceptance(const std::string& suite, const std::string& out_dir, const Log& log) {
  require(suite == "quick" || suite == "full", Errc::invalid_argument, "suite must be quick or full");
  require(!out_dir.empty(), Errc::invalid_argument, "an output directory is required");
  const bool full = suite == "full";
  fs::create_directories(out_dir);

  AcceptanceReport rep;
  Config cfg;
  cfg.set("accept.suite", suite);
  rep.manifest.set_config(cfg);
  const auto t_all = clock_type::now();
  const Log quiet;  // sub-run progress stays out of the table

  auto dir = [&](int id, const char* name) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "c%02d_%s", id, name);
    return (fs::path(out_dir) / buf).string();
  };

  auto run = [&](int id, const char* title, const char* name, bool selected,
                 const std::function<void(Criterion&)>& body) {
    CriterionResult r;
    if (!selected) {
      r = {id, title, "SKIP", "full suite only", 0.0};
    } else {
      Criterion c(id, title, dir(id, name));
      const auto t0 = clock_type::now();
      try {
        body(c);
        r = c.finish(since(t0), rep.manifest);
      } catch (const std::exception& e) {
        r = {id, title, "FAIL", std::string("error: ") + e.what(), since(t0)};
        rep.manifest.add(Metric::at_most("c" + std::to_string(id) + "/failed_checks", 1.0, 0.0, e.what()));
      }
    }
    rep.criteria.push_back(r);
    if (log) log(format_criterion(r));
  };

  run(1, "solitary profiles approach KdV", "profile", true, [&](Criterion& c) {
    const auto t0 = clock_type::now();
    const auto& m = c.run("profile", "profile.eps = 0.05, 0.1, 0.2\n", c.sub(""), quiet);
    c.limit("runtime_s", since(t0), 30.0);
    c.headline(m, "kdv_order_q", "q");
  });

  run(2, "resonant curve coefficients", "eigencurve", full, [&](Criterion& c) {
    const auto t0 = clock_type::now();
    const auto& m = c.run("eigencurve", "eigencurve.model = ep\neigencurve.eps = 0.1\neigencurve.n = 4096\n", c.sub(""),
                          quiet);
    c.limit("runtime_s", since(t0), 600.0);
    c.headline(m, "lambda1", "lambda1");
    c.headline(m, "lambda2", "lambda2");
  });

  run(3, "zero mode of the linearization", "zero_mode", true, [&](Criterion& c) {
    const auto& m = c.run("eigencurve", "eigencurve.model = zero\n", c.sub(""), quiet);
    c.headline(m, "zero_mode_residual", "residual");
  });

  run(4, "KP-II resonant modes", "kp", true, [&](Criterion& c) {
    const auto t0 = clock_type::now();
    const auto& m = c.run("eigencurve", "eigencurve.model = kp\neigencurve.eta = 0.1, 0.2\n", c.sub(""), quiet);
    c.limit("runtime_s", since(t0), 10.0);
    c.headline(m, "eta=0.1/residual", "res(0.1)");
    c.headline(m, "eta=0.2/residual", "res(0.2)");
  });

  run(5, "dispersive decay rates", "dispersion", true, [&](Criterion& c) {
    const auto t0 = clock_type::now();
    const auto& m = c.run("dispersion", "dispersion.mode = radial\ndispersion.data = both\n", c.sub(""), quiet);
    c.limit("runtime_s", since(t0), 300.0);
    c.headline(m, "gaussian/slope_inf", "bump slope");
    c.headline(m, "lowfreq/slope_inf", "low-freq slope");
    c.headline(m, "inflection_mismatch", "root diff");
  });

  run(6, "symbol negativity and damping", "symbols", true, [&](Criterion& c) {
    const auto t0 = clock_type::now();
    const auto& m = c.run("eigencurve", "eigencurve.model = symbols\neigencurve.eps = 0.05\n", c.sub(""), quiet);
    c.limit("runtime_s", since(t0), 10.0);
    c.headline(m, "max_re_lambda", "max Re");
    double mn = std::numeric_limits<double>::infinity();
    for (const auto& x : m.metrics())
      if (x.name.rfind("margin/", 0) == 0) mn = std::min(mn, x.value);
    RunManifest tmp("symbols");
    tmp.add(Metric::info("min_margin", mn));
    c.headline(tmp, "min_margin", "min margin");
  });

  run(7, "modulation semigroup and decay", "modulation", true, [&](Criterion& c) {
    const auto t0 = clock_type::now();
    const auto& a = c.run("modulation", "modulation.part = semigroup\n", c.sub("semigroup"), quiet);
    const auto& b = c.run("modulation", "modulation.part = decay\n", c.sub("decay"), quiet);
    c.limit("runtime_s", since(t0), 30.0);
    c.headline(a, "semigroup_vs_oracle", "oracle diff");
    c.headline(b, "decay_slope_l2", "slope");
  });

  run(8, "longitudinal recovery", "recover", true, [&](Criterion& c) {
    const auto t0 = clock_type::now();
    const auto& m = c.run("modulation", "modulation.part = recover\n", c.sub(""), quiet);
    c.limit("runtime_s", since(t0), 5.0);
    c.headline(m, "recovery_residual", "residual");
    c.headline(m, "subsonic_rejected", "rejects subsonic");
  });

  run(9, "nonlinear integrator", "integrator", true, [&](Criterion& c) {
    auto t0 = clock_type::now();
    const auto& a = c.run("simulate", "simulate.check = integrator\n", c.sub("line"), quiet);
    c.limit("runtime_1d_s", since(t0), 600.0);
    t0 = clock_type::now();
    const auto& b = c.run("simulate", smoke_2d_config, c.sub("plane"), quiet);
    c.limit("runtime_2d_s", since(t0), 1800.0);
    c.headline(a, "stationarity_drift", "drift");
    c.headline(a, "richardson_order_T5", "order");
    c.headline(a, "linear_response_slope", "linear slope");
    c.headline(b, "mass_drift", "2D mass");
    c.headline(b, "hamiltonian_drift", "2D H");
  });

  run(10, full ? "perturbation decay and extraction" : "modulation extraction (10c only)", "stability", true,
      [&](Criterion& c) {
        if (full) {
          SimulationRun a = simulate_experiment(ExperimentConfig::from(Config::parse(stability_1d_config, "stability 1d")),
                                                c.sub("line"), quiet);
          const auto& ra = a.series.records;
          const double ratio = ra.back().weighted_norm / ra.front().weighted_norm;
          a.manifest.add(Metric::at_most("weighted_norm_ratio_T200", ratio, 0.5, "halved by t = 200"));
          a.manifest.write(c.sub("line"));
          c.keep(a.manifest);
          c.headline(a.manifest, "weighted_norm_ratio_T200", "1D ratio");

          SimulationRun b = simulate_experiment(ExperimentConfig::from(Config::parse(stability_2d_config, "stability 2d")),
                                                c.sub("plane"), quiet);
          std::vector<double> t, g;
          for (const auto& r : b.series.records)
            if (r.t >= 20.0 - 1e-9 && r.t <= 200.0 + 1e-9) {
              t.push_back(r.t);
              g.push_back(r.gamma_inf);
            }
          const LineFit f = fit_decay_exponent(t, g, 20.0, 200.0);
          b.manifest.add(Metric::at_most("gamma_inf_slope_20_200", f.slope, -0.2));
          b.manifest.add(Metric::at_most("gamma_inf_end_over_start", g.back() / g.front(), 1.0, "decreasing"));
          b.manifest.write(c.sub("plane"));
          c.keep(b.manifest);
          c.headline(b.manifest, "gamma_inf_slope_20_200", "2D gamma slope");
        }
        const auto& m = c.run("simulate", "simulate.check = extraction\n", c.sub("extraction"), quiet);
        c.headline(m, "plane_max_error", "extraction err");
      });

  rep.manifest.set_runtime(since(t_all));
  rep.manifest.write(out_dir);
  return rep;
}

}  // namespace iaw
