#pragma once
#include <map>
#include <set>
#include <string>
#include <vector>

namespace iaw {

// Flat text format, one "section.key = value" per line, '#' starts a comment.
class Config {
 public:
  static Config parse(const std::string& text, const std::string& origin = "<string>");
  static Config load(const std::string& path);

  bool has(const std::string& key) const { return values_.count(key) != 0; }
  void set(const std::string& key, const std::string& value) { values_[key] = value; }

  std::string get(const std::string& key, const std::string& def) const;
  double get(const std::string& key, double def) const;
  int get(const std::string& key, int def) const;
  std::vector<double> get_list(const std::string& key, const std::vector<double>& def) const;

  // keys that no getter asked for; callers treat them as errors
  std::vector<std::string> unused() const;
  void require_all_used() const;

  const std::map<std::string, std::string>& values() const { return values_; }
  std::string dump() const;

 private:
  std::map<std::string, std::string> values_;
  mutable std::set<std::string> used_;
  std::string origin_;
};

}  // namespace iaw
