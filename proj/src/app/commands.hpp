#pragma once
#include <functional>
#include <string>
#include <vector>

#include "app/manifest.hpp"
#include "sim/config.hpp"
#include "sim/experiment.hpp"

namespace iaw {

using Log = std::function<void(const std::string&)>;

// Options are "<command>.<key> = value" pairs, except for simulate, which
// takes the experiment keys directly plus simulate.check. Unknown keys are
// rejected with Errc::invalid_argument.
//
// Every command except report writes its CSV files and manifest.json under
// out_dir and returns the manifest.
RunManifest run_command(const std::string& name, const Config& options, const std::string& out_dir,
                        const Log& log = nullptr);

const std::vector<std::string>& command_names();

RunManifest cmd_profile(const Config& options, const std::string& out_dir, const Log& log);
RunManifest cmd_eigencurve(const Config& options, const std::string& out_dir, const Log& log);
RunManifest cmd_dispersion(const Config& options, const std::string& out_dir, const Log& log);
RunManifest cmd_modulation(const Config& options, const std::string& out_dir, const Log& log);
RunManifest cmd_simulate(const Config& options, const std::string& out_dir, const Log& log);
// prints the tables of every manifest.json below report.in; writes nothing
RunManifest cmd_report(const Config& options, const std::string& out_dir, const Log& log);

// Experiment run with the standard metrics; the caller may add more before
// writing the manifest.
struct SimulationRun {
  RunManifest manifest{"simulate"};
  TimeSeries series;
};
SimulationRun simulate_experiment(const ExperimentConfig& cfg, const std::string& out_dir, const Log& log);

// one formatted line per metric
std::string format_metrics(const RunManifest& m);

}  // namespace iaw
