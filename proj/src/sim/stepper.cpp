#include "sim/stepper.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "core/error.hpp"
#include "core/multiplier.hpp"

namespace iaw {

Stepper::Stepper(const Grid& grid, const PressureLaw& law, double c0, StepperOptions opt)
    : grid_(grid), law_(law), c0_(c0), opt_(opt) {
  require(grid.dims() <= 2, Errc::invalid_argument, "the integrator runs in 1D or 2D");
  HalfSpectrum probe;
  probe.grid = grid;
  const std::size_t m = grid.size() / grid.n(grid.dims() - 1) * probe.last_len();
  kx_.resize(m);
  ky_.resize(m);
  k2_.resize(m);
  nyq_x_.resize(m);
  nyq_y_.resize(m);
  keep_.resize(m);
  for (std::size_t i = 0; i < m; ++i) {
    const auto k = probe.k(i);
    const auto sl = probe.slots(i);
    kx_[i] = k[0];
    ky_[i] = k[1];
    k2_[i] = k[0] * k[0] + k[1] * k[1];
    nyq_x_[i] = grid.is_nyquist(0, sl[0]);
    nyq_y_[i] = grid.dims() == 2 && grid.is_nyquist(1, sl[1]);
    bool keep = true;
    for (int d = 0; d < grid.dims(); ++d)
      if (3 * std::abs(grid.mode(d, sl[d])) > static_cast<long>(grid.n(d))) keep = false;
    keep_[i] = keep;
  }
  if (opt_.sponge_width > 0.0) {
    // every linear wave travels toward -x in the moving frame, so the layer
    // sits upstream only: sigma = s0 sin^2 on [-L/2, -L/2 + w], smooth across the wrap
    const double L = grid.length(0), w = opt_.sponge_width;
    require(w < 0.4 * L && opt_.sponge_strength > 0.0, Errc::invalid_argument,
            "absorbing layer must be narrower than 0.4 of the box");
    sigma_ = RealField(grid, "sigma");
    const std::size_t stride = grid.size() / grid.n(0);
    for (std::size_t i = 0; i < grid.size(); ++i) {
      const double d = grid.coord(0, i / stride) + 0.5 * L;
      const double c = d < w ? std::sin(std::numbers::pi * d / w) : 0.0;
      sigma_[i] = opt_.sponge_strength * c * c;
      sigma_int_ += sigma_[i];
    }
  }
}

void Stepper::set_sponge_reference(const SimState& ref) {
  require(ref.grid == grid_, Errc::invalid_argument, "sponge reference grid mismatch");
  n_ref_ = ref.n;
  psi_ref_ = ref.psi;
  ref_winding_ = ref.winding;
}

double Stepper::max_dt(const SimState& s) const {
  const RealField vx = s.vx(), vy = s.vy();
  double vm = 0.0;
  for (std::size_t i = 0; i < vx.size(); ++i) vm = std::max(vm, std::hypot(vx[i], vy[i]));
  double dx = grid_.dx(0);
  for (int d = 1; d < grid_.dims(); ++d) dx = std::min(dx, grid_.dx(d));
  return opt_.cfl * dx / (c0_ + vm + std::sqrt(law_.hp1() + 1.0));
}

const std::vector<std::array<cplx, 4>>& Stepper::flow_coeffs(double tau) {
  if (tau == cached_tau_) return coeffs_;
  const double hp = law_.hp1();
  coeffs_.resize(kx_.size());
  for (std::size_t i = 0; i < kx_.size(); ++i) {
    const double s = k2_[i];
    const double m = hp + 1.0 / (1.0 + s);
    const double w = std::sqrt(s * m);
    const double c = std::cos(w * tau);
    const double sinc = w == 0.0 ? tau : std::sin(w * tau) / w;
    // the sampled Nyquist cosine cannot be translated, only scaled
    const cplx drift = nyq_x_[i] ? cplx(std::cos(c0_ * kx_[i] * tau)) : std::polar(1.0, c0_ * kx_[i] * tau);
    coeffs_[i] = {drift * c, drift * (s * sinc), drift * (-m * sinc), drift * c};
  }
  cached_tau_ = tau;
  return coeffs_;
}

void Stepper::linear_flow(RealField& n, RealField& psi, double tau) {
  const auto& cf = flow_coeffs(tau);
  HalfSpectrum a = forward(n), b = forward(psi);
  for (std::size_t i = 0; i < cf.size(); ++i) {
    const cplx x = a.c[i], y = b.c[i];
    a.c[i] = cf[i][0] * x + cf[i][1] * y;
    b.c[i] = cf[i][2] * x + cf[i][3] * y;
  }
  n = inverse(a, "n");
  psi = inverse(b, "psi");
}

void Stepper::filter(HalfSpectrum& s) const {
  if (!opt_.dealias) return;
  for (std::size_t i = 0; i < s.c.size(); ++i)
    if (!keep_[i]) s.c[i] = 0.0;
}

FieldRates Stepper::nonlinear_rhs(const SimState& st, const RealField& n, const RealField& psi, RealField& phi,
                                  double winding) {
  for (double x : n.v)
    if (!(1.0 + x > 0.0) || !std::isfinite(x))
      fail(Errc::domain, "density positivity lost (1 + n <= 0): possible wave breaking");
  phi = poisson_newton(n, opt_.poisson, &phi).phi;
  ++solves_;

  if (std::isnan(winding)) winding = st.winding;
  const double ramp = winding / grid_.length(0);
  const double hp = law_.hp1();
  const HalfSpectrum ps = forward(psi);
  const HalfSpectrum ns = forward(n);
  HalfSpectrum t = ps;
  for (std::size_t i = 0; i < t.c.size(); ++i) t.c[i] = nyq_x_[i] ? 0.0 : ps.c[i] * cplx(0.0, kx_[i]);
  RealField vx = inverse(t);
  for (auto& x : vx.v) x += ramp;
  RealField vy(grid_);
  if (grid_.dims() == 2) {
    for (std::size_t i = 0; i < t.c.size(); ++i) t.c[i] = nyq_y_[i] ? 0.0 : ps.c[i] * cplx(0.0, ky_[i]);
    vy = inverse(t);
  }
  // (1 - Laplacian)^{-1} n belongs to the linear part
  for (std::size_t i = 0; i < t.c.size(); ++i) t.c[i] = ns.c[i] / (1.0 + k2_[i]);
  const RealField lin_phi = inverse(t);

  RealField fx(grid_), fy(grid_), bpsi(grid_, "psi");
  for (std::size_t i = 0; i < n.size(); ++i) {
    fx[i] = n[i] * vx[i];
    fy[i] = n[i] * vy[i];
    const double v2 = vx[i] * vx[i] + vy[i] * vy[i];
    bpsi[i] = c0_ * ramp - 0.5 * v2 - (law_.h_excess(n[i]) - hp * n[i]) - (phi[i] - lin_phi[i]);
  }
  HalfSpectrum ax = forward(fx);
  if (grid_.dims() == 2) {
    const HalfSpectrum ay = forward(fy);
    for (std::size_t i = 0; i < ax.c.size(); ++i)
      ax.c[i] = -(cplx(0.0, nyq_x_[i] ? 0.0 : kx_[i]) * ax.c[i] + cplx(0.0, nyq_y_[i] ? 0.0 : ky_[i]) * ay.c[i]);
  } else {
    for (std::size_t i = 0; i < ax.c.size(); ++i) ax.c[i] *= -cplx(0.0, nyq_x_[i] ? 0.0 : kx_[i]);
  }
  filter(ax);
  HalfSpectrum bp = forward(bpsi);
  filter(bp);
  FieldRates out{inverse(ax, "n"), inverse(bp, "psi")};
  last_flux_ = 0.0;
  last_power_ = 0.0;
  if (sigma_int_ > 0.0) {
    require(n_ref_.grid == grid_, Errc::internal, "absorbing layer has no reference state");
    // psi - psi_ref is split into its y-mean and the rest. The rest has no
    // gauge freedom and is damped directly. The mean is damped through its
    // velocity, v_t = -sigma dv, with the lost circulation moved into the
    // winding; a potential offset left in the layer would radiate at its
    // downstream edge.
    const std::size_t nx = grid_.n(0), ny = grid_.size() / nx;
    const double Lx = grid_.length(0);
    RealField dpsi = psi - psi_ref_;
    RealField mean(grid_);
    for (std::size_t ix = 0; ix < nx; ++ix) {
      double m = 0.0;
      for (std::size_t iy = 0; iy < ny; ++iy) m += dpsi[ix * ny + iy];
      for (std::size_t iy = 0; iy < ny; ++iy) mean[ix * ny + iy] = m / double(ny);
    }
    RealField dv = derivative(mean, 0);
    const double dramp = (winding - ref_winding_) / Lx;
    double flux = 0.0;
    for (std::size_t i = 0; i < n.size(); ++i) {
      dv[i] = -sigma_[i] * (dv[i] + dramp);
      flux += dv[i];
    }
    out.winding = flux * grid_.dx(0) / double(ny);
    for (std::size_t i = 0; i < n.size(); ++i) dv[i] -= out.winding / Lx;
    // primitive pinned at the seam, where sigma vanishes
    const RealField prim = inv_dx(dv);
    const std::vector<double> seam(prim.v.begin(), prim.v.begin() + static_cast<std::ptrdiff_t>(ny));
    RealField sp(grid_);
    for (std::size_t i = 0; i < n.size(); ++i) sp[i] = prim[i] - seam[i % ny] - sigma_[i] * (dpsi[i] - mean[i]);
    // energy removed: int H_n n_s + (1 + n) v . v_s, with H_n = |v|^2/2 + h + phi
    const RealField spx = derivative(sp, 0);
    const RealField spy = grid_.dims() == 2 ? derivative(sp, 1) : RealField(grid_);
    double power = 0.0;
    for (std::size_t i = 0; i < n.size(); ++i) {
      const double dn = n[i] - n_ref_[i];
      const double hn = 0.5 * (vx[i] * vx[i] + vy[i] * vy[i]) + law_.h_excess(n[i]) + phi[i];
      power += hn * sigma_[i] * dn - (1.0 + n[i]) * (vx[i] * (spx[i] + out.winding / Lx) + vy[i] * spy[i]);
      last_flux_ += sigma_[i] * dn;
      out.n[i] -= sigma_[i] * dn;
      out.psi[i] += sp[i];
    }
    last_power_ = power * grid_.cell_volume();
    last_flux_ *= grid_.cell_volume();
  }
  return out;
}

FieldRates Stepper::full_rhs(const SimState& s) {
  RealField phi = s.phi;
  FieldRates r = nonlinear_rhs(s, s.n, s.psi, phi);
  const HalfSpectrum a = forward(s.n), b = forward(s.psi);
  HalfSpectrum ln = a, lp = b;
  const double hp = law_.hp1();
  for (std::size_t i = 0; i < a.c.size(); ++i) {
    const cplx ik(0.0, nyq_x_[i] ? 0.0 : kx_[i]);
    const double m = hp + 1.0 / (1.0 + k2_[i]);
    ln.c[i] = c0_ * ik * a.c[i] + k2_[i] * b.c[i];
    lp.c[i] = c0_ * ik * b.c[i] - m * a.c[i];
  }
  r.n = r.n + inverse(ln);
  r.psi = r.psi + inverse(lp);
  return r;
}

void Stepper::step(SimState& s, double dt) {
  require(dt > 0.0, Errc::invalid_argument, "time step must be positive");
  const double lim = max_dt(s);
  if (dt > lim * (1.0 + 1e-12)) {
    std::ostringstream os;
    os << "time step " << dt << " violates the CFL bound " << lim;
    fail(Errc::invalid_argument, os.str());
  }
  linear_flow(s.n, s.psi, 0.5 * dt);

  RealField& phi = s.phi;
  const RealField n0 = s.n, p0 = s.psi;
  auto stage = [&](double h, const FieldRates& k) {
    RealField n = n0, p = p0;
    for (std::size_t i = 0; i < n.size(); ++i) {
      n[i] += h * k.n[i];
      p[i] += h * k.psi[i];
    }
    return std::make_pair(n, p);
  };
  const double w0 = s.winding;
  const FieldRates k1 = nonlinear_rhs(s, n0, p0, phi, w0);
  const double f1 = last_flux_, e1 = last_power_;
  auto y2 = stage(0.5 * dt, k1);
  const FieldRates k2 = nonlinear_rhs(s, y2.first, y2.second, phi, w0 + 0.5 * dt * k1.winding);
  const double f2 = last_flux_, e2 = last_power_;
  auto y3 = stage(0.5 * dt, k2);
  const FieldRates k3 = nonlinear_rhs(s, y3.first, y3.second, phi, w0 + 0.5 * dt * k2.winding);
  const double f3 = last_flux_, e3 = last_power_;
  auto y4 = stage(dt, k3);
  const FieldRates k4 = nonlinear_rhs(s, y4.first, y4.second, phi, w0 + dt * k3.winding);
  absorbed_ += dt / 6.0 * (f1 + 2.0 * f2 + 2.0 * f3 + last_flux_);
  absorbed_energy_ += dt / 6.0 * (e1 + 2.0 * e2 + 2.0 * e3 + last_power_);
  s.winding = w0 + dt / 6.0 * (k1.winding + 2.0 * k2.winding + 2.0 * k3.winding + k4.winding);
  for (std::size_t i = 0; i < s.n.size(); ++i) {
    s.n[i] = n0[i] + dt / 6.0 * (k1.n[i] + 2.0 * k2.n[i] + 2.0 * k3.n[i] + k4.n[i]);
    s.psi[i] = p0[i] + dt / 6.0 * (k1.psi[i] + 2.0 * k2.psi[i] + 2.0 * k3.psi[i] + k4.psi[i]);
  }

  linear_flow(s.n, s.psi, 0.5 * dt);
  s.phi = poisson_newton(s.n, opt_.poisson, &s.phi).phi;
  ++solves_;
  s.t += dt;
}

}  // namespace iaw
