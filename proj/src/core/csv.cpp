#include "core/csv.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "core/error.hpp"

namespace iaw {

std::string fmt17(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

void CsvTable::add(const std::vector<double>& row) {
  require(row.size() == cols_.size(), Errc::internal, "csv row width mismatch");
  data_.push_back(row);
}

void CsvTable::write(const std::string& path) const {
  std::ofstream out(path);
  require(out.good(), Errc::io, "cannot open " + path);
  for (std::size_t j = 0; j < cols_.size(); ++j) out << (j ? "," : "") << cols_[j];
  if (!tag_col_.empty()) out << "," << tag_col_;
  out << "\n";
  for (const auto& r : data_) {
    for (std::size_t j = 0; j < r.size(); ++j) out << (j ? "," : "") << fmt17(r[j]);
    if (!tag_col_.empty()) out << "," << tag_;
    out << "\n";
  }
  require(out.good(), Errc::io, "write failed for " + path);
}

CsvTable CsvTable::read(const std::string& path) {
  std::ifstream in(path);
  require(in.good(), Errc::io, "cannot open " + path);
  std::string line;
  std::getline(in, line);
  std::vector<std::string> cols;
  {
    std::istringstream is(line);
    for (std::string c; std::getline(is, c, ',');) cols.push_back(c);
  }
  // a trailing column whose cells are not numbers is the tag
  std::vector<std::vector<std::string>> cells;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<std::string> row;
    std::istringstream is(line);
    for (std::string c; std::getline(is, c, ',');) row.push_back(c);
    require(row.size() == cols.size(), Errc::io, "ragged row in " + path);
    cells.push_back(std::move(row));
  }
  std::string tag_col, tag;
  if (!cells.empty() && !cols.empty()) {
    const std::string& c = cells.front().back();
    char* end = nullptr;
    std::strtod(c.c_str(), &end);
    if (c.empty() || *end != '\0') {
      tag_col = cols.back();
      tag = c;
      cols.pop_back();
    }
  }
  CsvTable t(cols);
  t.tag_col_ = tag_col;
  t.tag_ = tag;
  for (const auto& r : cells) {
    std::vector<double> row;
    for (std::size_t j = 0; j < cols.size(); ++j) {
      char* end = nullptr;
      row.push_back(std::strtod(r[j].c_str(), &end));
      require(!r[j].empty() && *end == '\0', Errc::io, "non-numeric cell '" + r[j] + "' in " + path);
    }
    t.data_.push_back(std::move(row));
  }
  return t;
}

}  // namespace iaw
