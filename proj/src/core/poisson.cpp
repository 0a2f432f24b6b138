#include "core/poisson.hpp"

#include <cmath>
#include <sstream>

#include "core/error.hpp"
#include "core/spectral.hpp"

namespace iaw {

namespace {

// r = Laplacian(phi) - exp(phi) + 1 + n
RealField residual_field(const RealField& n, const RealField& phi) {
  RealField r = laplacian(phi);
  for (std::size_t i = 0; i < r.size(); ++i) r.v[i] += 1.0 + n.v[i] - std::exp(phi.v[i]);
  return r;
}

// (m - Laplacian)^{-1} f
RealField shifted_helmholtz(const RealField& f, double m) {
  auto s = forward(f);
  for (std::size_t i = 0; i < s.c.size(); ++i) {
    const auto k = s.k(i);
    s.c[i] /= m + k[0] * k[0] + k[1] * k[1] + k[2] * k[2];
  }
  return inverse(s);
}

double dot(const RealField& a, const RealField& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a.v[i] * b.v[i];
  return s;
}

// Preconditioned CG on (w - Laplacian) x = b with w = exp(phi) > 0.
RealField solve_linearized(const RealField& w, const RealField& b, double rtol, int& iters) {
  double wbar = 0.0;
  for (double x : w.v) wbar += x;
  wbar /= static_cast<double>(w.size());
  auto apply = [&](const RealField& x) {
    RealField y = laplacian(x);
    for (std::size_t i = 0; i < y.size(); ++i) y.v[i] = w.v[i] * x.v[i] - y.v[i];
    return y;
  };
  RealField x = shifted_helmholtz(b, wbar);
  RealField r = b - apply(x);
  const double bnorm = std::sqrt(dot(b, b));
  if (bnorm == 0.0) return x;
  RealField z = shifted_helmholtz(r, wbar);
  RealField p = z;
  double rz = dot(r, z);
  for (int it = 0; it < 200; ++it) {
    if (std::sqrt(dot(r, r)) <= rtol * bnorm) break;
    ++iters;
    RealField q = apply(p);
    const double alpha = rz / dot(p, q);
    for (std::size_t i = 0; i < x.size(); ++i) {
      x.v[i] += alpha * p.v[i];
      r.v[i] -= alpha * q.v[i];
    }
    z = shifted_helmholtz(r, wbar);
    const double rz_new = dot(r, z);
    const double beta = rz_new / rz;
    rz = rz_new;
    for (std::size_t i = 0; i < p.size(); ++i) p.v[i] = z.v[i] + beta * p.v[i];
  }
  return x;
}

}  // namespace

double poisson_residual(const RealField& n, const RealField& phi) { return sup_norm(residual_field(n, phi)); }

PoissonResult poisson_newton(const RealField& n, const PoissonOptions& opt, const RealField* guess) {
  require(opt.tol > 0.0, Errc::invalid_argument, "poisson tolerance must be positive");
  for (double x : n.v)
    require(1.0 + x > 0.0 && std::isfinite(x), Errc::domain, "density 1 + n must be positive");

  PoissonResult out;
  if (guess) {
    require(guess->grid == n.grid, Errc::invalid_argument, "poisson guess grid mismatch");
    out.phi = *guess;
  } else {
    out.phi = shifted_helmholtz(n, 1.0);
  }
  out.phi.grid = n.grid;
  out.phi.name = "phi";

  RealField r = residual_field(n, out.phi);
  double res = sup_norm(r);
  out.residuals.push_back(res);
  for (int it = 0; it < opt.max_iter && res >= opt.tol; ++it) {
    RealField w(n.grid);
    for (std::size_t i = 0; i < w.size(); ++i) w.v[i] = std::exp(out.phi.v[i]);
    // forcing term keeps the outer iteration quadratic
    const double rtol = std::max(1e-15, std::min(1e-2, res * 1e-2));
    RealField step = solve_linearized(w, r, rtol, out.cg_iterations);
    double theta = 1.0;
    bool improved = false;
    for (int half = 0; half < 12 && !improved; ++half, theta *= 0.5) {
      RealField trial = out.phi;
      for (std::size_t i = 0; i < trial.size(); ++i) trial.v[i] += theta * step.v[i];
      RealField rt = residual_field(n, trial);
      const double rnew = sup_norm(rt);
      if (rnew < res) {
        out.phi = std::move(trial);
        r = std::move(rt);
        res = rnew;
        improved = true;
      }
    }
    if (!improved) break;  // stagnated at roundoff
    out.residuals.push_back(res);
  }
  if (!(res < opt.tol)) {
    std::ostringstream msg;
    msg << "poisson newton did not converge, last residual " << res;
    fail(Errc::convergence, msg.str());
  }
  return out;
}

}  // namespace iaw
