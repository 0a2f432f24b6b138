#include "sim/config.hpp"

#include <boost/algorithm/string.hpp>

#include <fstream>
#include <sstream>

#include "core/error.hpp"

namespace iaw {

Config Config::parse(const std::string& text, const std::string& origin) {
  Config c;
  c.origin_ = origin;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    boost::algorithm::trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    std::string key = line.substr(0, eq == std::string::npos ? line.size() : eq);
    boost::algorithm::trim(key);
    const bool dotted = key.find('.') != std::string::npos && key.front() != '.' && key.back() != '.';
    if (eq == std::string::npos || !dotted) {
      std::ostringstream os;
      os << origin << ":" << lineno << ": expected 'section.key = value'";
      fail(Errc::invalid_argument, os.str());
    }
    std::string val = line.substr(eq + 1);
    boost::algorithm::trim(val);
    if (c.values_.count(key)) {
      std::ostringstream os;
      os << origin << ":" << lineno << ": duplicate key '" << key << "'";
      fail(Errc::invalid_argument, os.str());
    }
    c.values_[key] = val;
  }
  return c;
}

Config Config::load(const std::string& path) {
  std::ifstream f(path);
  require(bool(f), Errc::io, "cannot read config file " + path);
  std::ostringstream ss;
  ss << f.rdbuf();
  return parse(ss.str(), path);
}

std::string Config::get(const std::string& key, const std::string& def) const {
  used_.insert(key);
  auto it = values_.find(key);
  return it == values_.end() ? def : it->second;
}

double Config::get(const std::string& key, double def) const {
  used_.insert(key);
  auto it = values_.find(key);
  if (it == values_.end()) return def;
  try {
    std::size_t pos = 0;
    const double v = std::stod(it->second, &pos);
    if (pos != it->second.size()) throw std::invalid_argument("trailing");
    return v;
  } catch (const std::exception&) {
    fail(Errc::invalid_argument, origin_ + ": key '" + key + "' expects a number, got '" + it->second + "'");
  }
}

int Config::get(const std::string& key, int def) const {
  const double v = get(key, static_cast<double>(def));
  require(v == static_cast<int>(v), Errc::invalid_argument, origin_ + ": key '" + key + "' expects an integer");
  return static_cast<int>(v);
}

std::vector<double> Config::get_list(const std::string& key, const std::vector<double>& def) const {
  used_.insert(key);
  auto it = values_.find(key);
  if (it == values_.end()) return def;
  std::vector<std::string> parts;
  boost::algorithm::split(parts, it->second, boost::is_any_of(","));
  std::vector<double> out;
  for (auto& p : parts) {
    boost::algorithm::trim(p);
    if (p.empty()) continue;
    try {
      out.push_back(std::stod(p));
    } catch (const std::exception&) {
      fail(Errc::invalid_argument, origin_ + ": key '" + key + "' expects a list of numbers");
    }
  }
  return out;
}

std::vector<std::string> Config::unused() const {
  std::vector<std::string> out;
  for (const auto& kv : values_)
    if (!used_.count(kv.first)) out.push_back(kv.first);
  return out;
}

void Config::require_all_used() const {
  const auto u = unused();
  if (u.empty()) return;
  std::string msg = origin_ + ": unknown key(s):";
  for (const auto& k : u) msg += " " + k;
  fail(Errc::invalid_argument, msg);
}

std::string Config::dump() const {
  std::ostringstream os;
  for (const auto& kv : values_) os << kv.first << " = " << kv.second << "\n";
  return os.str();
}

}  // namespace iaw
