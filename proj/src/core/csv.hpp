#pragma once
#include <string>
#include <vector>

namespace iaw {

// lossless 17-digit formatting
std::string fmt17(double x);

class CsvTable {
 public:
  explicit CsvTable(std::vector<std::string> columns) : cols_(std::move(columns)) {}
  void add(const std::vector<double>& row);
  std::size_t rows() const { return data_.size(); }
  const std::vector<std::string>& columns() const { return cols_; }
  const std::vector<std::vector<double>>& data() const { return data_; }
  // constant text column appended to every row, e.g. a run id
  void set_tag(std::string column, std::string value) {
    tag_col_ = std::move(column);
    tag_ = std::move(value);
  }
  const std::string& tag() const { return tag_; }
  void write(const std::string& path) const;
  static CsvTable read(const std::string& path);

 private:
  std::vector<std::string> cols_;
  std::vector<std::vector<double>> data_;
  std::string tag_col_, tag_;
};

}  // namespace iaw
