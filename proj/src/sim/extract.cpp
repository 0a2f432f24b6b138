#include "sim/extract.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <numbers>
#include <sstream>

#include "core/error.hpp"
#include "core/multiplier.hpp"
#include "core/poisson.hpp"

namespace iaw {

WaveFamily::WaveFamily(const PressureLaw& law, double c0, const Grid& line, double dc, int nodes)
    : c0_(c0), c_lo_(c0 - dc), c_hi_(c0 + dc), line_(line) {
  require(line.dims() == 1 && nodes >= 3 && dc > 0.0, Errc::invalid_argument, "wave family needs a line and dc > 0");
  require(c_lo_ > law.V(), Errc::invalid_argument, "wave family must stay supersonic");
  // Chebyshev points of the second kind and their barycentric weights
  for (int j = 0; j < nodes; ++j) {
    const double x = std::cos(std::numbers::pi * j / (nodes - 1));
    nodes_.push_back(c0 + dc * x);
    bary_.push_back((j % 2 ? -1.0 : 1.0) * ((j == 0 || j == nodes - 1) ? 0.5 : 1.0));
    const SolitaryWave w = sagdeev_profile(law, nodes_.back(), line, 1e-10);
    n_hat_.push_back(forward(w.n));
    u_hat_.push_back(forward(w.u));
  }
}

std::vector<double> WaveFamily::weights(double c, std::vector<double>* dw) const {
  const std::size_t m = nodes_.size();
  std::vector<double> l(m, 0.0);
  if (dw) dw->assign(m, 0.0);
  for (std::size_t j = 0; j < m; ++j) {
    if (c == nodes_[j]) {
      l[j] = 1.0;
      if (dw) {
        // derivative of the interpolant at a node
        double djj = 0.0;
        for (std::size_t k = 0; k < m; ++k) {
          if (k == j) continue;
          const double d = bary_[k] / bary_[j] / (nodes_[j] - nodes_[k]);
          (*dw)[k] = d;
          djj -= d;
        }
        (*dw)[j] = djj;
      }
      return l;
    }
  }
  double s = 0.0, s1 = 0.0;
  std::vector<double> q(m);
  for (std::size_t j = 0; j < m; ++j) {
    q[j] = bary_[j] / (c - nodes_[j]);
    s += q[j];
    s1 += q[j] / (c - nodes_[j]);
  }
  for (std::size_t j = 0; j < m; ++j) l[j] = q[j] / s;
  if (dw)
    for (std::size_t j = 0; j < m; ++j) (*dw)[j] = (-q[j] / (c - nodes_[j]) + l[j] * s1) / s;
  return l;
}

WaveFamily::Sample WaveFamily::eval(double c, double gamma) const {
  std::vector<double> dl;
  const auto l = weights(c, &dl);
  HalfSpectrum n = n_hat_[0], u = u_hat_[0];
  HalfSpectrum nc = n, uc = u, nx = n, ux = u;
  for (std::size_t i = 0; i < n.c.size(); ++i) {
    cplx a = 0.0, b = 0.0, ac = 0.0, bc = 0.0;
    for (std::size_t j = 0; j < l.size(); ++j) {
      a += l[j] * n_hat_[j].c[i];
      b += l[j] * u_hat_[j].c[i];
      ac += dl[j] * n_hat_[j].c[i];
      bc += dl[j] * u_hat_[j].c[i];
    }
    const double k = n.k(i)[0];
    const bool nyq = line_.is_nyquist(0, i);
    const cplx sh = nyq ? cplx(std::cos(k * gamma)) : std::polar(1.0, -k * gamma);
    const cplx ik(0.0, nyq ? 0.0 : k);
    n.c[i] = a * sh;
    u.c[i] = b * sh;
    nc.c[i] = ac * sh;
    uc.c[i] = bc * sh;
    nx.c[i] = ik * a * sh;
    ux.c[i] = ik * b * sh;
  }
  return {inverse(n), inverse(u), inverse(nc), inverse(uc), inverse(nx), inverse(ux)};
}

namespace {

std::size_t lines(const Grid& g) { return g.dims() == 2 ? g.n(1) : 1; }

void line_of(const RealField& f, std::size_t j, std::vector<double>& out) {
  const std::size_t ny = lines(f.grid), nx = f.grid.n(0);
  out.resize(nx);
  for (std::size_t i = 0; i < nx; ++i) out[i] = f[i * ny + j];
}

// initial shift: crest position from a parabola through the peak sample
double crest(const std::vector<double>& n, const Grid& line) {
  std::size_t im = 0;
  for (std::size_t i = 1; i < n.size(); ++i)
    if (n[i] > n[im]) im = i;
  const std::size_t N = n.size();
  const double a = n[(im + N - 1) % N], b = n[im], c = n[(im + 1) % N];
  const double den = a - 2.0 * b + c;
  const double off = den != 0.0 ? 0.5 * (a - c) / den : 0.0;
  return line.coord(0, im) + off * line.dx(0);
}

void lowpass(std::vector<double>& v, const Grid& g, double cutoff) {
  if (cutoff <= 0.0 || g.dims() < 2) return;
  const Grid line = Grid::line(g.n(1), g.length(1));
  RealField f(line, v);
  f = apply_multiplier(f, [cutoff](double k, double, double) { return cplx(std::abs(k) <= cutoff ? 1.0 : 0.0); });
  v = f.v;
}

}  // namespace

Modulation extract_modulation(const SimState& s, const WaveFamily& fam, const ExtractOptions& opt, const Modulation* guess) {
  const Grid& g = s.grid;
  require(g.n(0) == fam.line().n(0) && g.length(0) == fam.line().length(0), Errc::invalid_argument,
          "wave family line does not match the state grid");
  const std::size_t ny = lines(g), nx = g.n(0);
  const RealField vx = s.vx();
  Modulation m;
  m.c.resize(ny);
  m.gamma.resize(ny);
  m.misfit.resize(ny);
  std::vector<double> nl, vl;
  for (std::size_t j = 0; j < ny; ++j) {
    line_of(s.n, j, nl);
    line_of(vx, j, vl);
    double c = guess ? guess->c[j] : fam.c0();
    double gam = guess ? guess->gamma[j] : crest(nl, fam.line());
    double misfit = 0.0;
    bool done = false;
    int it = 0;
    for (; it < opt.max_iter && !done; ++it) {
      const auto smp = fam.eval(c, gam);
      Eigen::Matrix2d A = Eigen::Matrix2d::Zero();
      Eigen::Vector2d b = Eigen::Vector2d::Zero();
      misfit = 0.0;
      for (std::size_t i = 0; i < nx; ++i) {
        // weight frozen at the current iterate
        const double w = std::exp(opt.weight * (g.coord(0, i) - gam));
        const double r1 = w * (nl[i] - smp.n[i]), r2 = w * (vl[i] - smp.u[i]);
        const Eigen::Vector2d j1(-w * smp.n_c[i], w * smp.n_x[i]);
        const Eigen::Vector2d j2(-w * smp.u_c[i], w * smp.u_x[i]);
        A += j1 * j1.transpose() + j2 * j2.transpose();
        b += j1 * r1 + j2 * r2;
        misfit += r1 * r1 + r2 * r2;
      }
      const Eigen::Vector2d step = -A.ldlt().solve(b);
      c += step[0];
      gam += step[1];
      if (!(c > fam.c_min() && c < fam.c_max()) || !std::isfinite(gam)) {
        std::ostringstream os;
        os << "modulation fit left the wave family (c = " << c << ", misfit " << std::sqrt(misfit) << ")";
        fail(Errc::convergence, os.str());
      }
      done = std::abs(step[0]) <= opt.step_tol * std::abs(c) && std::abs(step[1]) <= opt.step_tol * (1.0 + std::abs(gam));
    }
    if (!done) {
      std::ostringstream os;
      os << "modulation fit did not converge on line " << j << " (misfit " << std::sqrt(misfit * g.dx(0)) << ")";
      fail(Errc::convergence, os.str());
    }
    m.c[j] = c;
    m.gamma[j] = gam;
    m.misfit[j] = std::sqrt(misfit * g.dx(0));
    m.iterations = std::max(m.iterations, it);
  }
  lowpass(m.c, g, opt.cutoff);
  lowpass(m.gamma, g, opt.cutoff);
  return m;
}

double weighted_perturbation_norm(const SimState& s, const WaveFamily& fam, const Modulation& m, double a) {
  const Grid& g = s.grid;
  const std::size_t ny = lines(g), nx = g.n(0);
  const RealField vx = s.vx();
  double acc = 0.0;
  for (std::size_t j = 0; j < ny; ++j) {
    const auto smp = fam.eval(m.c[j], m.gamma[j]);
    for (std::size_t i = 0; i < nx; ++i) {
      const double w = std::exp(a * (g.coord(0, i) - m.gamma[j]));
      const double dn = s.n[i * ny + j] - smp.n[i], dv = vx[i * ny + j] - smp.u[i];
      acc += w * w * (dn * dn + dv * dv);
    }
  }
  return std::sqrt(acc * g.cell_volume());
}

double perturbation_sup(const SimState& s, const WaveFamily& fam, const Modulation& m) {
  const Grid& g = s.grid;
  const std::size_t ny = lines(g), nx = g.n(0);
  double sup = 0.0;
  for (std::size_t j = 0; j < ny; ++j) {
    const auto smp = fam.eval(m.c[j], m.gamma[j]);
    for (std::size_t i = 0; i < nx; ++i) sup = std::max(sup, std::abs(s.n[i * ny + j] - smp.n[i]));
  }
  return sup;
}

SimState modulated_state(const PressureLaw& law, const WaveFamily& fam, const Grid& grid, const std::vector<double>& c,
                         const std::vector<double>& gamma) {
  const std::size_t ny = lines(grid), nx = grid.n(0);
  require(c.size() == ny && gamma.size() == ny, Errc::invalid_argument, "one (c, gamma) per transverse line");
  // a single winding: every line must carry the same speed
  for (double cj : c)
    require(cj == c[0], Errc::invalid_argument, "manufactured states vary the shift only across lines");
  SimState s = zero_state(law, fam.c0(), grid);
  for (std::size_t j = 0; j < ny; ++j) {
    const auto smp = fam.eval(c[j], gamma[j]);
    RealField up = smp.u;
    const double um = mean(up);
    s.winding = um * grid.length(0);
    for (auto& x : up.v) x -= um;
    const RealField pp = inv_dx(up);
    for (std::size_t i = 0; i < nx; ++i) {
      s.n[i * ny + j] = smp.n[i];
      s.psi[i * ny + j] = pp[i];
    }
  }
  s.phi = poisson_newton(s.n).phi;
  return s;
}

}  // namespace iaw
