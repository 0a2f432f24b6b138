#include "profiles/solitary_wave.hpp"

#include <algorithm>
#include <boost/math/tools/roots.hpp>
#include <cmath>
#include <sstream>

#include "core/error.hpp"
#include "core/fit.hpp"
#include "core/poisson.hpp"
#include "core/quadrature.hpp"
#include "core/spectral.hpp"

namespace iaw {

namespace {

constexpr int kCapPanels = 8;
constexpr double kCapEnd = 0.70710678118654752;  // phi = phi*/2

const GaussRule<20>& rule20() { return GaussRule<20>::get(); }
const GaussRule<24>& rule24() { return GaussRule<24>::get(); }

}  // namespace

SagdeevProfile::SagdeevProfile(const PressureLaw& law, double c) : law_(&law), c_(c), hp1_(law.hp1()) {
  const double V = law.V();
  require(std::isfinite(c) && c > V, Errc::domain, "solitary waves need c > V");
  eps_ = std::sqrt(c - V);
  kappa_ = std::sqrt(1.0 - 1.0 / (c * c - hp1_));

  // scan for the first sign change of Q, then polish
  const double step = 1e-3 * eps_ * eps_;
  double lo = 0.0, hi = 0.0;
  bool found = false;
  for (int k = 1; k < 2000000; ++k) {
    const double p = k * step;
    double q;
    try {
      q = Q(p);
    } catch (const Error&) {
      break;  // left the branch of n(phi)
    }
    if (q <= 0.0) {
      lo = p - step;
      hi = p;
      found = true;
      break;
    }
    if (p > 4.0) break;
  }
  require(found, Errc::domain, "pseudopotential has no positive root for this speed");
  auto f = [this](double p) { return Q(p); };
  boost::math::tools::eps_tolerance<double> tol(52);
  std::uintmax_t iters = 200;
  auto br = boost::math::tools::toms748_solve(f, lo, hi, tol, iters);
  phi_star_ = 0.5 * (br.first + br.second);

  double x = 0.0;
  for (int k = 0; k < kCapPanels; ++k) {
    Panel p{kCapEnd * k / kCapPanels, kCapEnd * (k + 1) / kCapPanels, x, 0.0};
    p.x1 = cap_x(p, p.v1);
    x = p.x1;
    cap_.push_back(p);
  }
}

double SagdeevProfile::n_of_phi(double phi) const {
  const double c2 = c_ * c_;
  double n = phi / (c2 - hp1_);
  double last = INFINITY;
  for (int it = 0; it < 60; ++it) {
    const double r = 1.0 + n;
    require(r > 0.0, Errc::domain, "density inversion left the physical branch");
    const double G = 0.5 * c2 * n * (2.0 + n) / (r * r) - law_->h_excess(n) - phi;
    const double dG = c2 / (r * r * r) - law_->dh(r);
    require(dG > 0.0, Errc::domain, "density inversion reached the sonic point");
    const double dn = G / dG;
    n -= dn;
    if (std::abs(dn) <= 4e-16 * std::abs(n)) return n;
    // roundoff floor: the step stopped shrinking
    if (it > 3 && std::abs(dn) >= 0.5 * last) return n;
    last = std::abs(dn);
  }
  fail(Errc::convergence, "density inversion did not converge");
}

double SagdeevProfile::dQ(double phi) const { return std::expm1(phi) - n_of_phi(phi); }

double SagdeevProfile::Q(double phi) const {
  if (phi_star_ > 0.0 && phi > 0.5 * phi_star_) {
    // measured from the turning point to avoid cancellation
    return -rule24().integrate([this](double t) { return dQ(t); }, phi, phi_star_);
  }
  return phi * rule24().integrate([this, phi](double tau) { return dQ(phi * tau); }, 0.0, 1.0);
}

double SagdeevProfile::cap_integrand(double s) const {
  if (s == 0.0) return 2.0 * phi_star_ / std::sqrt(-2.0 * dQ(phi_star_) * phi_star_);
  const double q = Q(phi_star_ * (1.0 - s * s));
  return 2.0 * phi_star_ * s / std::sqrt(2.0 * q);
}

double SagdeevProfile::tail_integrand(double u) const {
  const double phi = std::exp(u);
  return phi / std::sqrt(2.0 * Q(phi));
}

double SagdeevProfile::cap_x(const Panel& p, double s) const {
  if (s == p.v0) return p.x0;
  return p.x0 + rule20().integrate([this](double v) { return cap_integrand(v); }, p.v0, s);
}

double SagdeevProfile::tail_x(const Panel& p, double u) const {
  if (u == p.v0) return p.x0;
  return p.x0 + rule20().integrate([this](double v) { return tail_integrand(v); }, u, p.v0);
}

void SagdeevProfile::extend_tail(double x_needed) const {
  while (tail_.empty() || tail_.back().x1 < x_needed) {
    Panel p;
    if (tail_.empty()) {
      p.v0 = std::log(0.5 * phi_star_);
      p.x0 = cap_.back().x1;
    } else {
      p.v0 = tail_.back().v1;
      p.x0 = tail_.back().x1;
    }
    p.v1 = p.v0 - 1.0;
    require(p.v1 > -700.0, Errc::domain, "profile tail underflows before the requested distance");
    p.x1 = tail_x(p, p.v1);
    tail_.push_back(p);
  }
}

double SagdeevProfile::x_of_phi(double phi) const {
  require(phi > 0.0 && phi <= phi_star_, Errc::domain, "phi outside (0, phi*]");
  if (phi >= 0.5 * phi_star_) {
    const double s = std::sqrt(std::max(0.0, 1.0 - phi / phi_star_));
    const auto it = std::find_if(cap_.begin(), cap_.end(), [s](const Panel& p) { return s <= p.v1; });
    return cap_x(it == cap_.end() ? cap_.back() : *it, s);
  }
  const double u = std::log(phi);
  while (tail_.empty() || tail_.back().v1 > u) extend_tail(tail_.empty() ? 0.0 : tail_.back().x1 + 1.0);
  const auto it = std::find_if(tail_.begin(), tail_.end(), [u](const Panel& p) { return u >= p.v1; });
  return tail_x(*it, u);
}

double SagdeevProfile::phi_of_x(double x) const {
  x = std::abs(x);
  if (x == 0.0) return phi_star_;
  const int digits = 50;
  std::uintmax_t iters = 100;
  if (x <= cap_.back().x1) {
    const auto& p = *std::find_if(cap_.begin(), cap_.end(), [x](const Panel& q) { return x <= q.x1; });
    auto f = [&](double s) { return std::make_pair(cap_x(p, s) - x, cap_integrand(s)); };
    const double guess = p.v0 + (p.v1 - p.v0) * (x - p.x0) / (p.x1 - p.x0);
    const double s = boost::math::tools::newton_raphson_iterate(f, guess, p.v0, p.v1, digits, iters);
    return phi_star_ * (1.0 - s * s);
  }
  extend_tail(x);
  const auto& p = *std::find_if(tail_.begin(), tail_.end(), [x](const Panel& q) { return x <= q.x1; });
  auto f = [&](double u) { return std::make_pair(tail_x(p, u) - x, -tail_integrand(u)); };
  const double guess = p.v0 + (p.v1 - p.v0) * (x - p.x0) / (p.x1 - p.x0);
  const double u = boost::math::tools::newton_raphson_iterate(f, guess, p.v1, p.v0, digits, iters);
  return std::exp(u);
}

SolitaryWave sagdeev_profile(const PressureLaw& law, double c, const Grid& grid, double tol) {
  require(grid.dims() == 1, Errc::invalid_argument, "profiles live on a 1D grid");
  require(tol > 0.0, Errc::invalid_argument, "profile tolerance must be positive");
  require(grid.n(0) % 2 == 0, Errc::invalid_argument, "profile grid needs an even point count");
  SagdeevProfile prof(law, c);
  SolitaryWave w;
  w.law = law;
  w.c = c;
  w.eps = prof.eps();
  w.grid = grid;
  w.phi_star = prof.phi_star();
  w.kappa = prof.kappa();
  {
    const double edge = prof.phi_star() * std::exp(-prof.kappa() * 0.5 * grid.length(0));
    std::ostringstream msg;
    msg << "grid too short: edge value " << edge << " exceeds tolerance " << tol;
    require(edge < tol, Errc::domain, msg.str());
  }

  const std::size_t N = grid.n(0);
  w.n = RealField(grid, "n");
  w.u = RealField(grid, "u");
  w.phi = RealField(grid, "phi");
  // compute x >= 0 and mirror so parity is exact
  for (std::size_t j = N / 2; j < N; ++j) w.phi.v[j] = prof.phi_of_x(static_cast<double>(j - N / 2) * grid.dx(0));
  for (std::size_t j = 1; j < N / 2; ++j) w.phi.v[j] = w.phi.v[N - j];
  w.phi.v[0] = prof.phi_of_x(0.5 * grid.length(0));
  for (std::size_t j = 0; j < N; ++j) {
    const double n = prof.n_of_phi(w.phi.v[j]);
    w.n.v[j] = n;
    w.u.v[j] = c * n / (1.0 + n);
  }

  w.poisson_residual = poisson_residual(w.n, w.phi);
  w.first_integral_residual = algebraic_residual(w);

  // far-field rate from the sampled tail
  std::vector<double> xs, ls;
  const double n0 = w.n.v[N / 2];
  for (std::size_t j = N / 2; j < N; ++j) {
    const double r = w.n.v[j] / n0;
    if (r < 1e-4 && r > 1e-12) {
      xs.push_back(grid.coord(0, j));
      ls.push_back(std::log(w.n.v[j]));
    }
  }
  if (xs.size() >= 2) w.decay_rate = -fit_line(xs, ls).slope;
  return w;
}

SolitaryWave sagdeev_profile_eps(const PressureLaw& law, double eps, const Grid& grid, double tol) {
  require(eps > 0.0, Errc::invalid_argument, "eps must be positive");
  return sagdeev_profile(law, law.V() + eps * eps, grid, tol);
}

double algebraic_residual(const SolitaryWave& w) {
  double r = 0.0;
  for (std::size_t j = 0; j < w.n.size(); ++j) {
    const double n = w.n.v[j], u = w.u.v[j], p = w.phi.v[j];
    r = std::max(r, std::abs(w.c * u - 0.5 * u * u - w.law.h_excess(n) - p));
    r = std::max(r, std::abs(u * (1.0 + n) - w.c * n));
  }
  return r;
}

CDerivative profile_c_derivative(const SolitaryWave& w, double dc) {
  require(dc > 0.0 && dc < 0.5 * w.eps * w.eps, Errc::invalid_argument, "c-step must be small against eps^2");
  auto wp = sagdeev_profile(w.law, w.c + dc, w.grid, 1.0);
  auto wm = sagdeev_profile(w.law, w.c - dc, w.grid, 1.0);
  require(wp.grid == w.grid && wm.grid == w.grid, Errc::invalid_argument, "family members on different grids");
  CDerivative d;
  d.dc = dc;
  d.dn = (0.5 / dc) * (wp.n - wm.n);
  d.du = (0.5 / dc) * (wp.u - wm.u);
  d.dphi = (0.5 / dc) * (wp.phi - wm.phi);
  d.dn.name = "dc_n";
  d.du.name = "dc_u";
  d.dphi.name = "dc_phi";
  return d;
}

CDerivativeResiduals c_derivative_residuals(const SolitaryWave& w, const CDerivative& d) {
  const std::size_t N = w.n.size();
  RealField f1(w.grid), f2(w.grid), b(w.grid);
  for (std::size_t j = 0; j < N; ++j) {
    f1.v[j] = (w.c - w.u.v[j]) * d.dn.v[j];
    f2.v[j] = (1.0 + w.n.v[j]) * d.du.v[j];
  }
  RealField cont = derivative(f2 - f1, 0) - derivative(w.n, 0);
  RealField lap = derivative(d.dphi, 0, 2);
  CDerivativeResiduals r;
  r.continuity = sup_norm(cont);
  for (std::size_t j = 0; j < N; ++j) {
    const double rho = 1.0 + w.n.v[j];
    const double bern = -w.u.v[j] - (w.c - w.u.v[j]) * d.du.v[j] + w.law.dh(rho) * d.dn.v[j] + d.dphi.v[j];
    const double pois = std::exp(w.phi.v[j]) * d.dphi.v[j] - lap.v[j] - d.dn.v[j];
    r.bernoulli = std::max(r.bernoulli, std::abs(bern));
    r.poisson = std::max(r.poisson, std::abs(pois));
  }
  return r;
}

}  // namespace iaw
