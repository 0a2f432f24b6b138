#include "modulation/decay.hpp"

#include <cmath>
#include <numbers>

#include "core/error.hpp"
#include "core/quadrature.hpp"

namespace iaw {

ModulationData y2_data(double eta0) {
  require(eta0 > 0.0, Errc::invalid_argument, "band edge must be positive");
  ModulationData d;
  d.kind = "y2";
  d.fhat = [eta0](double z) -> std::array<std::complex<double>, 2> {
    const double s = z / eta0;
    double chi = 0.0;
    if (s <= 1.5)
      chi = 1.0;
    else if (s < 2.0) {
      const double u = (s - 1.5) / 0.5;
      chi = std::exp(1.0 - 1.0 / (1.0 - u * u));
    }
    return {chi, chi};
  };
  return d;
}

std::vector<DecayTrace> linear_modulation_decay(const ModulationData& f0, const std::vector<double>& times,
                                                const DecayOptions& opt) {
  const double zmax = 2.0 * opt.eta0;
  const auto top = modulation_symbol_limit(opt.V, opt.c0, opt.nu, zmax);
  require(top.omega2() > 0.0, Errc::domain, "band 2 eta0 leaves the oscillatory regime of the modulation symbol");
  // the data must vanish beyond the band
  const auto edge = f0.fhat(zmax * (1.0 + 1e-12));
  require(std::abs(edge[0]) + std::abs(edge[1]) == 0.0, Errc::invalid_argument,
          "modulation data must have transform supported in |zeta| <= 2 eta0");

  const auto& G = GaussRule<20>::get();
  std::vector<DecayTrace> out;
  for (double t : times) {
    require(t >= 0.0, Errc::invalid_argument, "times must be non-negative");
    // resolve oscillations of frequency l1 t and the heat factor width
    const int panels = std::max(64, static_cast<int>(std::ceil(zmax * (top.l1 * t + std::sqrt(top.l2 * t)))));
    const double h = zmax / panels;
    std::array<double, 3> acc{};
    for (int p = 0; p < panels; ++p) {
      const double m = (p + 0.5) * h;
      for (std::size_t j = 0; j < G.x.size(); ++j) {
        const double z = m + 0.5 * h * G.x[j];
        auto s = modulation_symbol_limit(opt.V, opt.c0, opt.nu, z);
        Mat2 a = s.generator();
        if (opt.kappa != 0.0) a += modulation_correction(s, opt.kappa);
        const auto d = f0.fhat(z);
        const Eigen::Vector2cd v = expm2(a, t) * Eigen::Vector2cd(d[0], d[1]);
        const double e = v.squaredNorm() * z * G.w[j] * 0.5 * h;
        acc[0] += e;
        acc[1] += e * z * z;
        acc[2] += e * z * z * z * z;
      }
    }
    // Plancherel in R^2 for radial transforms: |f|^2 = (2 pi)^{-1} int |fhat|^2 z dz
    DecayTrace tr;
    tr.t = t;
    for (int k = 0; k < 3; ++k) tr.norm[k] = std::sqrt(acc[k] / (2.0 * std::numbers::pi));
    out.push_back(tr);
  }
  return out;
}

}  // namespace iaw
