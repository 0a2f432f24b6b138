#pragma once
#include <json.hpp>
#include <string>
#include <vector>

#include "sim/config.hpp"

namespace iaw {

// A checked number. kind selects the test:
//   within   |value - target| <= tolerance
//   relative |value / target - 1| <= tolerance
//   at_most  value <= target
//   at_least value >= target
//   info     never fails
struct Metric {
  std::string name;
  double value = 0.0;
  double target = 0.0;
  double tolerance = 0.0;
  std::string kind = "info";
  std::string note;
  bool pass = true;

  static Metric within(std::string name, double value, double target, double tol, std::string note = {});
  static Metric relative(std::string name, double value, double target, double tol, std::string note = {});
  static Metric at_most(std::string name, double value, double bound, std::string note = {});
  static Metric at_least(std::string name, double value, double bound, std::string note = {});
  static Metric info(std::string name, double value, std::string note = {});
  // evaluates pass from the other fields; non-finite values fail
  void evaluate();
};

class RunManifest {
 public:
  explicit RunManifest(std::string kind) : kind_(std::move(kind)) {}

  const std::string& kind() const { return kind_; }
  void set_config(const Config& c) { config_ = c; }
  const Config& config() const { return config_; }
  void add_output(const std::string& file, const std::string& role);
  Metric& add(Metric m);
  void set_extra(const std::string& key, nlohmann::json value) { extra_[key] = std::move(value); }
  void set_runtime(double seconds) { runtime_ = seconds; }
  double runtime() const { return runtime_; }

  const std::vector<Metric>& metrics() const { return metrics_; }
  bool passed() const;
  // name-based id from kind, version and resolved config
  std::string run_id() const;

  nlohmann::json to_json() const;
  // writes <dir>/manifest.json
  void write(const std::string& dir) const;
  static RunManifest from_json(const nlohmann::json& j);
  static RunManifest read(const std::string& path);

 private:
  std::string kind_;
  Config config_;
  std::vector<std::pair<std::string, std::string>> outputs_;
  std::vector<Metric> metrics_;
  nlohmann::json extra_ = nlohmann::json::object();
  double runtime_ = 0.0;
};

const char* code_version();

}  // namespace iaw
