#include "profiles/kdv.hpp"

#include <algorithm>
#include <cmath>

#include "core/error.hpp"
#include "core/fit.hpp"

namespace iaw {

double kdv_soliton(const PressureLaw& law, double xhat) {
  const double s = 1.0 / std::cosh(std::sqrt(0.5 * law.V()) * xhat);
  return 3.0 / law.C() * s * s;
}

double KdvErrors::max() const { return std::max({n, phi, u}); }

KdvErrors kdv_rescale_error(const SolitaryWave& w) {
  KdvErrors e;
  e.eps = w.eps;
  const double e2 = w.eps * w.eps, V = w.law.V();
  // binned envelope of the density error in xhat
  std::vector<double> bins(12, 0.0);
  for (std::size_t j = 0; j < w.n.size(); ++j) {
    const double xh = w.eps * w.grid.coord(0, j);
    const double ref = kdv_soliton(w.law, xh);
    const double en = std::abs(w.n.v[j] / e2 - ref);
    e.n = std::max(e.n, en);
    e.phi = std::max(e.phi, std::abs(w.phi.v[j] / e2 - ref));
    e.u = std::max(e.u, std::abs(w.u.v[j] / (V * e2) - ref));
    const auto b = static_cast<std::size_t>(std::abs(xh));
    if (b < bins.size()) bins[b] = std::max(bins[b], en);
  }
  std::vector<double> xs, ls;
  for (std::size_t b = 2; b < bins.size(); ++b) {
    if (bins[b] <= 0.0) continue;
    xs.push_back(b + 0.5);
    ls.push_back(std::log(bins[b]));
  }
  if (xs.size() >= 2) e.envelope_rate = -fit_line(xs, ls).slope;
  return e;
}

KdvOrder kdv_order_fit(const std::vector<KdvErrors>& members) {
  require(members.size() >= 3, Errc::invalid_argument, "order fit needs at least 3 family members");
  KdvOrder o;
  o.members = members;
  std::vector<double> eps, err;
  for (const auto& m : members) {
    eps.push_back(m.eps);
    err.push_back(m.max());
  }
  const auto f = fit_order(eps, err);
  o.q = f.slope;
  o.q_halfwidth = f.halfwidth;
  return o;
}

}  // namespace iaw
