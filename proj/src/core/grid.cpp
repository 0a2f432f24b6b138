#include "core/grid.hpp"

#include <cmath>
#include <numbers>

#include "core/error.hpp"

namespace iaw {

Grid::Grid(std::vector<Axis> axes) : axes_(std::move(axes)) {
  require(!axes_.empty() && axes_.size() <= 3, Errc::invalid_argument, "grid needs 1 to 3 axes");
  for (const auto& a : axes_) {
    require(a.n >= 8, Errc::invalid_argument, "grid axis needs at least 8 points");
    require(a.length > 0.0 && std::isfinite(a.length), Errc::invalid_argument, "grid period must be positive");
  }
}

std::size_t Grid::size() const {
  std::size_t s = 1;
  for (const auto& a : axes_) s *= a.n;
  return s;
}

double Grid::cell_volume() const {
  double v = 1.0;
  for (int d = 0; d < dims(); ++d) v *= dx(d);
  return v;
}

std::vector<double> Grid::coords(int d) const {
  std::vector<double> x(n(d));
  for (std::size_t j = 0; j < x.size(); ++j) x[j] = coord(d, j);
  return x;
}

long Grid::mode(int d, std::size_t j) const {
  const long nn = static_cast<long>(n(d));
  const long jj = static_cast<long>(j);
  return jj < (nn + 1) / 2 ? jj : jj - nn;
}

double Grid::wavenumber(int d, std::size_t j) const {
  return 2.0 * std::numbers::pi * static_cast<double>(mode(d, j)) / length(d);
}

std::array<std::size_t, 3> Grid::unravel(std::size_t idx) const {
  std::array<std::size_t, 3> out{0, 0, 0};
  for (int d = dims() - 1; d >= 0; --d) {
    out[d] = idx % n(d);
    idx /= n(d);
  }
  return out;
}

bool Grid::operator==(const Grid& o) const {
  if (axes_.size() != o.axes_.size()) return false;
  for (std::size_t d = 0; d < axes_.size(); ++d) {
    if (axes_[d].n != o.axes_[d].n) return false;
    if (std::abs(axes_[d].length - o.axes_[d].length) > 1e-12 * axes_[d].length) return false;
  }
  return true;
}

}  // namespace iaw
