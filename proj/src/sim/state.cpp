#include "sim/state.hpp"

#include <cmath>
#include <numbers>
#include <random>

#include "core/error.hpp"
#include "core/multiplier.hpp"
#include "core/poisson.hpp"
#include "core/spectral.hpp"

namespace iaw {

RealField SimState::vx() const {
  RealField v = derivative(psi, 0);
  const double r = ramp();
  for (auto& x : v.v) x += r;
  v.name = "vx";
  return v;
}

RealField SimState::vy() const {
  if (grid.dims() < 2) return RealField(grid, "vy");
  RealField v = derivative(psi, 1);
  v.name = "vy";
  return v;
}

SimState zero_state(const PressureLaw& law, double c0, const Grid& grid) {
  SimState s;
  s.grid = grid;
  s.c0 = c0;
  s.law = law;
  s.n = RealField(grid, "n");
  s.psi = RealField(grid, "psi");
  s.phi = RealField(grid, "phi");
  return s;
}

SimState soliton_state(const PressureLaw& law, double eps, const Grid& grid) {
  require(grid.dims() <= 2, Errc::invalid_argument, "soliton states are built in 1D or 2D");
  const Grid line = Grid::line(grid.n(0), grid.length(0));
  const SolitaryWave w = sagdeev_profile_eps(law, eps, line);
  SimState s = zero_state(law, w.c, grid);

  // psi' = u = ramp + periodic part with zero mean
  const double um = mean(w.u);
  RealField up = w.u;
  for (auto& x : up.v) x -= um;
  const RealField pp = inv_dx(up);
  s.winding = um * grid.length(0);

  const std::size_t ny = grid.dims() == 2 ? grid.n(1) : 1;
  for (std::size_t i = 0; i < grid.n(0); ++i)
    for (std::size_t j = 0; j < ny; ++j) {
      s.n[i * ny + j] = w.n[i];
      s.psi[i * ny + j] = pp[i];
      s.phi[i * ny + j] = w.phi[i];
    }
  return s;
}

double weighted_pair_norm(const RealField& n, const RealField& psi, double a) {
  const Grid& g = n.grid;
  const RealField dpsi = derivative(psi, 0);
  const std::size_t stride = g.size() / g.n(0);
  double s = 0.0;
  for (std::size_t i = 0; i < g.size(); ++i) {
    const double w = std::exp(a * g.coord(0, i / stride));
    s += w * w * (n[i] * n[i] + dpsi[i] * dpsi[i]);
  }
  return std::sqrt(s * g.cell_volume());
}

PerturbationFields perturbation_fields(const Perturbation& p, const Grid& grid) {
  require(p.parity == "even" || p.parity == "odd", Errc::invalid_argument, "perturbation parity must be even or odd");
  require(p.width > 0.0, Errc::invalid_argument, "perturbation width must be positive");
  require(p.transverse_width >= 0.0, Errc::invalid_argument, "transverse width must be non-negative");
  require((p.transverse_mode == 0 && p.transverse_width == 0.0) || grid.dims() == 2, Errc::invalid_argument,
          "transverse perturbation modes need a 2D grid");
  std::mt19937_64 rng(p.seed);
  std::uniform_real_distribution<double> unif(0.0, 2.0 * std::numbers::pi);
  const double phase = unif(rng);

  PerturbationFields f{RealField(grid, "dn"), RealField(grid, "dpsi")};
  const std::size_t ny = grid.dims() == 2 ? grid.n(1) : 1;
  for (std::size_t i = 0; i < grid.n(0); ++i) {
    const double s = (grid.coord(0, i) - p.x0) / p.width;
    const double bump = std::exp(-s * s) * (p.parity == "odd" ? s : 1.0);
    for (std::size_t j = 0; j < ny; ++j) {
      double tr = 1.0;
      if (p.transverse_width > 0.0) {
        const double r = grid.coord(1, j) / p.transverse_width;
        tr = std::exp(-r * r);
      } else if (p.transverse_mode != 0)
        tr = std::cos(2.0 * std::numbers::pi * p.transverse_mode * grid.coord(1, j) / grid.length(1) + phase);
      f.n[i * ny + j] = bump * tr;
      f.psi[i * ny + j] = p.psi_ratio * bump * tr;
    }
  }
  const double norm = weighted_pair_norm(f.n, f.psi, p.weight);
  require(norm > 0.0, Errc::invalid_argument, "perturbation vanishes on the grid");
  const double scale = p.amplitude / norm;
  for (auto& x : f.n.v) x *= scale;
  for (auto& x : f.psi.v) x *= scale;
  return f;
}

void add_perturbation(SimState& s, const PerturbationFields& f, double scale) {
  require(f.n.grid == s.grid, Errc::invalid_argument, "perturbation grid mismatch");
  for (std::size_t i = 0; i < s.n.size(); ++i) {
    s.n[i] += scale * f.n[i];
    s.psi[i] += scale * f.psi[i];
  }
  s.phi = poisson_newton(s.n, {}, &s.phi).phi;
}

}  // namespace iaw
