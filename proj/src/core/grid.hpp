#pragma once
#include <array>
#include <cstddef>
#include <vector>

namespace iaw {

struct Axis {
  std::size_t n = 0;
  double length = 0.0;
};

// Periodic box, axis 0 is the longitudinal direction x.
// Points sit at x_j = -L/2 + j*L/n so that x and -x are both samples.
class Grid {
 public:
  Grid() = default;
  explicit Grid(std::vector<Axis> axes);

  static Grid line(std::size_t n, double L) { return Grid({{n, L}}); }
  static Grid plane(std::size_t nx, double Lx, std::size_t ny, double Ly) { return Grid({{nx, Lx}, {ny, Ly}}); }

  int dims() const { return static_cast<int>(axes_.size()); }
  const Axis& axis(int d) const { return axes_[d]; }
  std::size_t n(int d) const { return axes_[d].n; }
  double length(int d) const { return axes_[d].length; }
  double dx(int d) const { return axes_[d].length / static_cast<double>(axes_[d].n); }
  std::size_t size() const;
  double cell_volume() const;

  double coord(int d, std::size_t j) const { return -0.5 * length(d) + static_cast<double>(j) * dx(d); }
  std::vector<double> coords(int d) const;

  // signed mode index in [-n/2, n/2) for storage slot j
  long mode(int d, std::size_t j) const;
  double wavenumber(int d, std::size_t j) const;
  // the slot holding the -n/2 mode (only exists for even n)
  bool is_nyquist(int d, std::size_t j) const { return n(d) % 2 == 0 && j == n(d) / 2; }

  // row-major: last axis fastest
  std::array<std::size_t, 3> unravel(std::size_t idx) const;

  bool operator==(const Grid& o) const;
  bool operator!=(const Grid& o) const { return !(*this == o); }

 private:
  std::vector<Axis> axes_;
};

}  // namespace iaw
