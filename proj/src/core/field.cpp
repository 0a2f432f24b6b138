#include "core/field.hpp"

#include <algorithm>
#include <cmath>

#include "core/error.hpp"

namespace iaw {

double l2_norm(const RealField& f) {
  double s = 0.0;
  for (double x : f.v) s += x * x;
  return std::sqrt(s * f.grid.cell_volume());
}

double l2_norm(const ComplexField& f) {
  double s = 0.0;
  for (const auto& x : f.v) s += std::norm(x);
  return std::sqrt(s * f.grid.cell_volume());
}

double sup_norm(const RealField& f) {
  double m = 0.0;
  for (double x : f.v) m = std::max(m, std::abs(x));
  return m;
}

double sup_norm(const ComplexField& f) {
  double m = 0.0;
  for (const auto& x : f.v) m = std::max(m, std::abs(x));
  return m;
}

double mean(const RealField& f) {
  if (f.v.empty()) return 0.0;
  double s = 0.0;
  for (double x : f.v) s += x;
  return s / static_cast<double>(f.size());
}

double integral(const RealField& f) {
  double s = 0.0;
  for (double x : f.v) s += x;
  return s * f.grid.cell_volume();
}

double rms(const RealField& f) {
  if (f.v.empty()) return 0.0;
  double s = 0.0;
  for (double x : f.v) s += x * x;
  return std::sqrt(s / static_cast<double>(f.size()));
}

RealField operator+(const RealField& a, const RealField& b) {
  require(a.grid == b.grid, Errc::invalid_argument, "grid mismatch in field sum");
  RealField r(a.grid, a.name);
  for (std::size_t i = 0; i < a.size(); ++i) r.v[i] = a.v[i] + b.v[i];
  return r;
}

RealField operator-(const RealField& a, const RealField& b) {
  require(a.grid == b.grid, Errc::invalid_argument, "grid mismatch in field difference");
  RealField r(a.grid, a.name);
  for (std::size_t i = 0; i < a.size(); ++i) r.v[i] = a.v[i] - b.v[i];
  return r;
}

RealField operator*(double s, const RealField& a) {
  RealField r(a.grid, a.name);
  for (std::size_t i = 0; i < a.size(); ++i) r.v[i] = s * a.v[i];
  return r;
}

ComplexField to_complex(const RealField& f) {
  ComplexField c(f.grid, f.name);
  for (std::size_t i = 0; i < f.size(); ++i) c.v[i] = f.v[i];
  return c;
}

}  // namespace iaw
