#include "sim/diagnostics.hpp"

#include <cmath>

#include "core/spectral.hpp"

namespace iaw {

Conserved conserved_quantities(const SimState& s) {
  const RealField vx = s.vx(), vy = s.vy();
  const RealField px = derivative(s.phi, 0);
  const RealField py = s.grid.dims() == 2 ? derivative(s.phi, 1) : RealField(s.grid);
  double m = 0.0, h = 0.0;
  for (std::size_t i = 0; i < s.n.size(); ++i) {
    const double n = s.n[i], f = s.phi[i];
    m += n;
    h += 0.5 * (1.0 + n) * (vx[i] * vx[i] + vy[i] * vy[i]) + s.law.Pi_excess(n) +
         0.5 * (px[i] * px[i] + py[i] * py[i]) + (f * std::exp(f) - std::expm1(f));
  }
  const double dv = s.grid.cell_volume();
  return {m * dv, h * dv};
}

}  // namespace iaw
