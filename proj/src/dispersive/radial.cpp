#include "dispersive/radial.hpp"

#include <boost/math/special_functions/bessel.hpp>
#include <boost/math/tools/minima.hpp>

#include <array>
#include <cmath>
#include <numbers>
#include <sstream>

#include "core/error.hpp"
#include "core/quadrature.hpp"

namespace iaw {

using cd = std::complex<double>;
constexpr std::size_t kNodes = 16;

namespace {

// Legendre polynomials at the rule's nodes, scaled for projection
struct LegendreTable {
  std::array<std::array<double, kNodes>, kNodes> proj{};  // proj[k][j] = (2k+1)/2 w_j P_k(x_j)

  LegendreTable() {
    const auto& G = GaussRule<kNodes>::get();
    for (std::size_t j = 0; j < kNodes; ++j) {
      double p0 = 1.0, p1 = G.x[j];
      for (std::size_t k = 0; k < kNodes; ++k) {
        double pk;
        if (k == 0)
          pk = p0;
        else if (k == 1)
          pk = p1;
        else {
          pk = ((2.0 * k - 1.0) * G.x[j] * p1 - (k - 1.0) * p0) / static_cast<double>(k);
          p0 = p1;
          p1 = pk;
        }
        proj[k][j] = (2.0 * k + 1.0) / 2.0 * G.w[j] * pk;
      }
    }
  }

  static const LegendreTable& get() {
    static const LegendreTable t;
    return t;
  }
};

}  // namespace

cd filon_panel(const cd* g, double w) {
  // int P_k(x) e^{iwx} dx = 2 i^k j_k(w)
  const auto& T = LegendreTable::get();
  const double aw = std::abs(w);
  cd sum = 0.0, ik = 1.0;
  for (std::size_t k = 0; k < kNodes; ++k) {
    cd ck = 0.0;
    for (std::size_t j = 0; j < kNodes; ++j) ck += T.proj[k][j] * g[j];
    double jk = boost::math::sph_bessel(static_cast<unsigned>(k), aw);
    if (w < 0.0 && (k % 2 == 1)) jk = -jk;
    sum += ck * ik * (2.0 * jk);
    ik *= cd(0.0, 1.0);
  }
  return sum;
}

RadialData gaussian_data(double sigma) {
  require(sigma > 0.0, Errc::invalid_argument, "gaussian width must be positive");
  RadialData d;
  d.kind = "gaussian";
  const double amp = std::pow(2.0 * std::numbers::pi, 1.5) * sigma * sigma * sigma;
  d.fhat = [=](double rho) { return amp * std::exp(-0.5 * sigma * sigma * rho * rho); };
  d.rho_hi = std::sqrt(2.0 * 40.0) / sigma;
  d.extent = 9.0 * sigma;
  return d;
}

RadialData low_frequency_bump(double rho_c) {
  require(rho_c > 0.0, Errc::invalid_argument, "band edge must be positive");
  RadialData d;
  d.kind = "low_frequency";
  d.fhat = [=](double rho) {
    const double s = rho / rho_c;
    return s < 1.0 ? std::exp(1.0 - 1.0 / (1.0 - s * s)) : 0.0;
  };
  d.rho_hi = rho_c;
  d.extent = 60.0 / rho_c;
  return d;
}

RadialData narrow_band(double rho0, double width) {
  require(width > 0.0 && rho0 > 8.0 * width, Errc::invalid_argument, "band must sit away from the origin");
  RadialData d;
  d.kind = "narrow_band";
  d.fhat = [=](double rho) {
    const double s = (rho - rho0) / width;
    return std::exp(-s * s);
  };
  d.rho_lo = rho0 - 6.5 * width;
  d.rho_hi = rho0 + 6.5 * width;
  d.extent = 10.0 / width;
  return d;
}

namespace {

// int over [lo, hi] of amp(rho) e^{i(tP(rho) + s rho)} with n panels
cd oscillatory(const std::function<double(double)>& amp, const DispersionProfile& p, double t, double s, double lo,
               double hi, int n) {
  const auto& G = GaussRule<kNodes>::get();
  const double h = (hi - lo) / n;
  std::array<cd, kNodes> g;
  cd total = 0.0;
  for (int i = 0; i < n; ++i) {
    const double a = lo + i * h;
    const double m = a + 0.5 * h;
    const double phim = t * p.P(m) + s * m;
    const double beta = t * p.dP(m) + s;
    for (std::size_t j = 0; j < kNodes; ++j) {
      const double rho = m + 0.5 * h * G.x[j];
      const double rest = t * (p.P(rho) - p.P(m)) + s * (rho - m) - beta * (rho - m);
      g[j] = amp(rho) * std::polar(1.0, rest);
    }
    total += std::polar(0.5 * h, phim) * filon_panel(g.data(), 0.5 * beta * h);
  }
  return total;
}

}  // namespace

RadialValue evolve_radial(const RadialData& f, const DispersionProfile& p, double r, double t, const RadialOptions& opt) {
  require(r >= 0.0 && t >= 0.0, Errc::invalid_argument, "radial evolution needs r >= 0, t >= 0");
  const double lo = f.rho_lo, hi = f.rho_hi;
  const double pi2 = std::numbers::pi * std::numbers::pi;
  const bool origin = r * hi < 1e-6;

  // start where the panel remainder phase h^2 t |P''| / 8 stays below ~1
  double d2max = 0.0;
  for (int i = 0; i <= 64; ++i) d2max = std::max(d2max, std::abs(p.d2P(lo + (hi - lo) * i / 64.0)));
  int n = std::max(4, static_cast<int>(std::ceil((hi - lo) * std::sqrt(t * d2max / 8.0))));

  auto eval = [&](int panels) -> cd {
    if (origin) {
      auto amp = [&](double rho) { return rho * rho * f.fhat(rho); };
      return oscillatory(amp, p, t, 0.0, lo, hi, panels) / (2.0 * pi2);
    }
    auto amp = [&](double rho) { return rho * f.fhat(rho); };
    const cd plus = oscillatory(amp, p, t, r, lo, hi, panels);
    const cd minus = oscillatory(amp, p, t, -r, lo, hi, panels);
    return (plus - minus) / cd(0.0, 2.0) / (2.0 * pi2 * r);
  };

  // roundoff floor: size of the non-oscillatory integral times the phase
  // magnitude, since a phase of size Phi carries an absolute error ~ Phi * 1e-16
  const double phase = 1.0 + t * p.P(hi) + r * hi;
  const double floor_scale = GaussRule<kNodes>::get().integrate(
      [&](double rho) { return (origin ? rho * rho : rho / std::max(r, 1e-300)) * std::abs(f.fhat(rho)); }, lo, hi);
  const double floor = 1e-14 * phase * floor_scale / (2.0 * pi2);

  RadialValue out;
  cd prev = eval(n);
  for (int k = 0; k < opt.max_doublings; ++k) {
    n *= 2;
    const cd cur = eval(n);
    const double diff = std::abs(cur - prev);
    out.u = cur;
    out.panels = n;
    out.achieved = diff / std::max(std::abs(cur), 1e-300);
    if (diff <= opt.rel_tol * std::abs(cur) + floor) return out;
    prev = cur;
  }
  std::ostringstream os;
  os << "radial quadrature did not converge at r=" << r << " t=" << t << " (achieved relative change "
     << out.achieved << ")";
  fail(Errc::convergence, os.str());
}

RadialSup radial_sup(const RadialData& f, const DispersionProfile& p, double t, const RadialOptions& opt) {
  double vmin = p.dP(f.rho_hi), vmax = 0.0;
  for (int i = 0; i <= 256; ++i) {
    const double rho = f.rho_lo + (f.rho_hi - f.rho_lo) * i / 256.0;
    vmin = std::min(vmin, p.dP(rho));
    vmax = std::max(vmax, p.dP(rho));
  }
  const double r_lo = std::max(0.0, vmin * t - f.extent);
  const double r_hi = vmax * t + f.extent;
  const double dr_osc = 0.25 * std::numbers::pi / std::max(f.rho_hi, 1e-12);
  const int n = std::max(opt.scan_points_min, static_cast<int>(std::ceil((r_hi - r_lo) / dr_osc)));
  const double dr = (r_hi - r_lo) / n;

  RadialSup best;
  best.t = t;
  auto absu = [&](double r) {
    ++best.evaluations;
    return std::abs(evolve_radial(f, p, r, t, opt).u);
  };
  int at = 0;
  for (int i = 0; i <= n; ++i) {
    const double v = absu(r_lo + i * dr);
    if (v > best.sup) {
      best.sup = v;
      at = i;
    }
  }
  if (r_lo > 0.0) {
    // the origin is outside the scanned shell; sample it too
    const double v0 = absu(0.0);
    if (v0 > best.sup) {
      best.sup = v0;
      best.r_at = 0.0;
      return best;
    }
  }
  const double a = std::max(0.0, r_lo + (at - 1) * dr), b = r_lo + (at + 1) * dr;
  std::uintmax_t it = 60;
  const auto m = boost::math::tools::brent_find_minima([&](double r) { return -absu(r); }, a, b, 40, it);
  best.r_at = r_lo + at * dr;
  if (-m.second > best.sup) {
    best.sup = -m.second;
    best.r_at = m.first;
  }
  return best;
}

}  // namespace iaw
