#include "app/manifest.hpp"

#include <boost/uuid/name_generator_sha1.hpp>
#include <boost/uuid/uuid_io.hpp>

#include <cmath>
#include <filesystem>
#include <fstream>

#include "core/error.hpp"

namespace iaw {

const char* code_version() { return IAW_VERSION; }

Metric Metric::within(std::string name, double value, double target, double tol, std::string note) {
  Metric m{std::move(name), value, target, tol, "within", std::move(note)};
  m.evaluate();
  return m;
}

Metric Metric::relative(std::string name, double value, double target, double tol, std::string note) {
  Metric m{std::move(name), value, target, tol, "relative", std::move(note)};
  m.evaluate();
  return m;
}

Metric Metric::at_most(std::string name, double value, double bound, std::string note) {
  Metric m{std::move(name), value, bound, 0.0, "at_most", std::move(note)};
  m.evaluate();
  return m;
}

Metric Metric::at_least(std::string name, double value, double bound, std::string note) {
  Metric m{std::move(name), value, bound, 0.0, "at_least", std::move(note)};
  m.evaluate();
  return m;
}

Metric Metric::info(std::string name, double value, std::string note) {
  Metric m{std::move(name), value, 0.0, 0.0, "info", std::move(note)};
  m.evaluate();
  return m;
}

void Metric::evaluate() {
  if (kind == "info") {
    pass = true;
    return;
  }
  if (!std::isfinite(value)) {
    pass = false;
    return;
  }
  if (kind == "within")
    pass = std::abs(value - target) <= tolerance;
  else if (kind == "relative")
    pass = target != 0.0 && std::abs(value / target - 1.0) <= tolerance;
  else if (kind == "at_most")
    pass = value <= target;
  else if (kind == "at_least")
    pass = value >= target;
  else
    fail(Errc::invalid_argument, "unknown metric kind '" + kind + "'");
}

void RunManifest::add_output(const std::string& file, const std::string& role) { outputs_.emplace_back(file, role); }

Metric& RunManifest::add(Metric m) {
  metrics_.push_back(std::move(m));
  return metrics_.back();
}

bool RunManifest::passed() const {
  for (const auto& m : metrics_)
    if (!m.pass) return false;
  return true;
}

std::string RunManifest::run_id() const {
  boost::uuids::name_generator_sha1 gen(boost::uuids::ns::oid());
  return boost::uuids::to_string(gen(kind_ + "\n" + code_version() + "\n" + config_.dump()));
}

nlohmann::json RunManifest::to_json() const {
  nlohmann::json j;
  j["kind"] = kind_;
  j["run_id"] = run_id();
  j["version"] = code_version();
  j["runtime_seconds"] = runtime_;
  j["config"] = nlohmann::json::object();
  for (const auto& kv : config_.values()) j["config"][kv.first] = kv.second;
  j["outputs"] = nlohmann::json::array();
  for (const auto& o : outputs_) j["outputs"].push_back({{"file", o.first}, {"role", o.second}});
  j["metrics"] = nlohmann::json::array();
  for (const auto& m : metrics_) {
    nlohmann::json mj{{"name", m.name}, {"value", m.value}, {"kind", m.kind}, {"pass", m.pass}};
    if (m.kind != "info") mj["target"] = m.target;
    if (m.kind == "within" || m.kind == "relative") mj["tolerance"] = m.tolerance;
    if (!m.note.empty()) mj["note"] = m.note;
    // json has no NaN
    if (!std::isfinite(m.value)) mj["value"] = nullptr;
    j["metrics"].push_back(mj);
  }
  j["passed"] = passed();
  j["extra"] = extra_;
  return j;
}

void RunManifest::write(const std::string& dir) const {
  std::filesystem::create_directories(dir);
  const std::string path = (std::filesystem::path(dir) / "manifest.json").string();
  std::ofstream out(path);
  require(out.good(), Errc::io, "cannot write " + path);
  out << to_json().dump(2) << "\n";
  require(out.good(), Errc::io, "write failed for " + path);
}

RunManifest RunManifest::from_json(const nlohmann::json& j) {
  try {
    RunManifest r(j.at("kind").get<std::string>());
    Config c;
    for (const auto& [k, v] : j.at("config").items()) c.set(k, v.get<std::string>());
    r.config_ = c;
    for (const auto& o : j.at("outputs")) r.add_output(o.at("file").get<std::string>(), o.at("role").get<std::string>());
    for (const auto& mj : j.at("metrics")) {
      Metric m;
      m.name = mj.at("name").get<std::string>();
      m.value = mj.at("value").is_null() ? std::nan("") : mj.at("value").get<double>();
      m.kind = mj.at("kind").get<std::string>();
      m.target = mj.value("target", 0.0);
      m.tolerance = mj.value("tolerance", 0.0);
      m.note = mj.value("note", std::string());
      m.evaluate();
      r.metrics_.push_back(m);
    }
    r.runtime_ = j.value("runtime_seconds", 0.0);
    r.extra_ = j.value("extra", nlohmann::json::object());
    return r;
  } catch (const nlohmann::json::exception& e) {
    fail(Errc::io, std::string("malformed manifest: ") + e.what());
  }
}

RunManifest RunManifest::read(const std::string& path) {
  std::ifstream in(path);
  require(in.good(), Errc::io, "cannot read " + path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    fail(Errc::io, path + ": " + e.what());
  }
  return from_json(j);
}

}  // namespace iaw
