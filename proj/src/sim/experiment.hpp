#pragma once
#include <functional>
#include <string>
#include <vector>

#include "core/csv.hpp"
#include "core/poisson.hpp"
#include "sim/config.hpp"
#include "sim/state.hpp"

namespace iaw {

// Perturbed solitary wave run in the moving frame. Keys, all optional:
//
//   wave.law = isothermal           wave.eps = 0.2
//   grid.nx = 4096  grid.lx = 400   grid.ny = 1  grid.ly = 0
//   run.t_end = 200  run.sample_every = 10  run.dt = 0 (CFL)  run.cfl = 1
//   run.snapshots = 0, 100, 200
//   perturbation.parity = even  .amplitude = 1e-3  .x0 = 10  .width = 3
//   perturbation.transverse_mode = 0  .transverse_width = 0  .psi_ratio = 1
//   perturbation.seed = 1
//   weight.a = eps/4
//   modulation.dc = eps^2/4  .nodes = 9  .cutoff = 0
//   sponge.width = 100  sponge.strength = 3
//   poisson.tol = 1e-11  poisson.max_iter = 50
struct ExperimentConfig {
  std::string law = "isothermal";
  double eps = 0.2;
  std::size_t nx = 4096, ny = 1;
  double lx = 400.0, ly = 0.0;
  double t_end = 200.0, sample_every = 10.0, dt = 0.0, cfl = 1.0;
  std::vector<double> snapshots;
  Perturbation perturbation{};
  double weight = -1.0;  // negative: eps / 4
  double family_dc = -1.0;  // negative: eps^2 / 4
  int family_nodes = 9;
  double cutoff = 0.0;
  double sponge_width = 100.0, sponge_strength = 3.0;
  PoissonOptions poisson{};

  // Reads every key above and rejects unknown ones.
  static ExperimentConfig from(const Config& c);
  // resolved values in the same key format
  Config resolved() const;
  Grid grid() const;
  double a() const { return weight < 0.0 ? 0.25 * eps : weight; }
};

struct SeriesRecord {
  double t = 0.0;
  double mass = 0.0, hamiltonian = 0.0;
  double weighted_norm = 0.0, sup_norm = 0.0;
  double c_tilde_inf = 0.0;  // max over y of |c - c0|
  double gamma_inf = 0.0;    // max over y of |gamma|, transverse mean removed in 2D
  double c_mean = 0.0, gamma_mean = 0.0;
  double absorbed_mass = 0.0, absorbed_energy = 0.0;
  double misfit = 0.0;
};

struct TimeSeries {
  std::vector<SeriesRecord> records;
  double dt = 0.0;
  std::size_t steps = 0;
  std::size_t poisson_solves = 0;
  double runtime = 0.0;
  std::vector<std::string> snapshot_files;

  CsvTable table() const;
  // relative drift of mass + absorbed and of H + absorbed energy
  double mass_drift() const;
  double hamiltonian_drift() const;
};

using Progress = std::function<void(const SeriesRecord&)>;

// Stateful form of a run: build, advance, sample.
class Experiment {
 public:
  explicit Experiment(const ExperimentConfig& cfg);
  ~Experiment();
  Experiment(const Experiment&) = delete;
  Experiment& operator=(const Experiment&) = delete;

  const ExperimentConfig& config() const { return cfg_; }
  const SimState& state() const;
  double dt() const { return dt_; }
  std::size_t steps() const { return steps_; }
  std::size_t poisson_solves() const;

  // steps of size dt() until t; t must sit on the step grid
  void advance_to(double t);
  // extraction and diagnostics at the current time
  SeriesRecord sample();

 private:
  struct Impl;
  ExperimentConfig cfg_;
  Impl* impl_;
  double dt_ = 0.0;
  std::size_t steps_ = 0;
};

// Steps to t_end and samples at the cadence. When out_dir is non-empty,
// field snapshots are written there as <out_dir>/snap_<t>_{n,psi}.
TimeSeries run_experiment(const ExperimentConfig& cfg, const std::string& out_dir = "",
                          const Progress& progress = nullptr);

// Unperturbed wave in its own frame: sup |n(T) - n(0)| and conservation.
struct Stationarity {
  double drift = 0.0;
  double mass_drift = 0.0, hamiltonian_drift = 0.0;
  double dt = 0.0, runtime = 0.0;
};
Stationarity stationarity_run(const PressureLaw& law, double eps, std::size_t n, double length, double t_end);

// Errors of dt, dt/2, dt/4 runs against each other; order = log2(e1/e2).
struct Richardson {
  double dt = 0.0;
  double e1 = 0.0, e2 = 0.0;
  double order = 0.0;
};
Richardson richardson_check(const ExperimentConfig& cfg, double t_end);

// |F(u_c + d p) - F(u_c) - d L p| against d for the full moving-frame
// vector field F and the assembled linearization L.
struct LinearResponse {
  std::vector<double> delta, defect;
  double slope = 0.0;
};
LinearResponse linear_response(const PressureLaw& law, double eps, std::size_t n, double length,
                               const std::vector<double>& deltas);

}  // namespace iaw
