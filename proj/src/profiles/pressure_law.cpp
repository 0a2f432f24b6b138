#include "profiles/pressure_law.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <sstream>

#include "core/error.hpp"
#include "core/quadrature.hpp"

namespace iaw {

PressureLaw PressureLaw::isothermal() {
  PressureLaw law;
  law.name_ = "isothermal";
  law.P_ = [](double z) { return z; };
  law.dP_ = [](double) { return 1.0; };
  law.d2P_ = [](double) { return 0.0; };
  law.h_exact_ = [](double e) { return std::log1p(e); };
  // (1+e) log(1+e) - e, series near e = 0
  law.Pi_exact_ = [](double e) {
    if (std::abs(e) < 1e-3) {
      double s = 0.0, p = e * e;
      for (int k = 2; k < 12; ++k, p *= -e) s += p / (k * (k - 1.0));
      return s;
    }
    return (1.0 + e) * std::log1p(e) - e;
  };
  return law;
}

PressureLaw PressureLaw::polytropic(double K, double gamma) {
  require(K > 0.0 && gamma >= 1.0, Errc::invalid_argument, "polytropic law needs K > 0, gamma >= 1");
  if (gamma == 1.0 && K == 1.0) return isothermal();
  PressureLaw law;
  std::ostringstream nm;
  nm << "polytropic:" << K << ":" << gamma;
  law.name_ = nm.str();
  law.P_ = [K, gamma](double z) { return K * std::pow(z, gamma); };
  law.dP_ = [K, gamma](double z) { return K * gamma * std::pow(z, gamma - 1.0); };
  law.d2P_ = [K, gamma](double z) { return K * gamma * (gamma - 1.0) * std::pow(z, gamma - 2.0); };
  if (gamma == 1.0) {
    law.h_exact_ = [K](double e) { return K * std::log1p(e); };
  } else {
    const double g1 = gamma - 1.0;
    law.h_exact_ = [K, gamma, g1](double e) { return K * gamma / g1 * std::expm1(g1 * std::log1p(e)); };
  }
  return law;
}

PressureLaw PressureLaw::polynomial(std::vector<double> coeffs) {
  require(!coeffs.empty(), Errc::invalid_argument, "polynomial law needs coefficients");
  PressureLaw law;
  std::ostringstream nm;
  nm << "poly:";
  for (std::size_t k = 0; k < coeffs.size(); ++k) nm << (k ? "," : "") << coeffs[k];
  law.name_ = nm.str();
  law.P_ = [coeffs](double z) {
    double s = 0.0;
    for (std::size_t k = coeffs.size(); k-- > 0;) s = (s + coeffs[k]) * z;
    return s;
  };
  law.dP_ = [coeffs](double z) {
    double s = 0.0;
    for (std::size_t k = coeffs.size(); k-- > 0;) s = s * z + (k + 1.0) * coeffs[k];
    return s;
  };
  law.d2P_ = [coeffs](double z) {
    double s = 0.0;
    for (std::size_t k = coeffs.size(); k-- > 1;) s = s * z + (k + 1.0) * k * coeffs[k];
    return s;
  };
  require(law.dP(1.0) > 0.0, Errc::invalid_argument, "pressure must increase at unit density");
  return law;
}

PressureLaw PressureLaw::parse(const std::string& spec) {
  if (spec == "isothermal") return isothermal();
  auto numbers = [](const std::string& s, char sep) {
    std::vector<double> v;
    std::istringstream is(s);
    for (std::string tok; std::getline(is, tok, sep);) {
      std::size_t used = 0;
      double x = 0.0;
      try {
        x = std::stod(tok, &used);
      } catch (const std::exception&) {
        fail(Errc::invalid_argument, "bad number in law spec: " + tok);
      }
      require(used == tok.size(), Errc::invalid_argument, "bad number in law spec: " + tok);
      v.push_back(x);
    }
    return v;
  };
  if (spec.rfind("polytropic:", 0) == 0) {
    auto v = numbers(spec.substr(11), ':');
    require(v.size() == 2, Errc::invalid_argument, "polytropic law expects K:gamma");
    return polytropic(v[0], v[1]);
  }
  if (spec.rfind("poly:", 0) == 0) return polynomial(numbers(spec.substr(5), ','));
  fail(Errc::invalid_argument, "unknown pressure law: " + spec);
}

double PressureLaw::h_quadrature(double z) const {
  require(z > 0.0 && std::isfinite(z), Errc::domain, "enthalpy needs positive density");
  return quad_excess(z - 1.0);
}

double PressureLaw::quad_excess(double e) const {
  if (e == 0.0) return 0.0;
  auto f = [this](double t) { return dP_(1.0 + t) / (1.0 + t); };
  double err = 0.0;
  return boost::math::quadrature::gauss_kronrod<double, 31>::integrate(f, 0.0, e, 15, 1e-14, &err);
}

double PressureLaw::h(double z) const {
  require(z > 0.0, Errc::domain, "enthalpy needs positive density");
  return h_excess(z - 1.0);
}

double PressureLaw::h_excess(double e) const {
  require(e > -1.0, Errc::domain, "enthalpy needs positive density");
  return h_exact_ ? (*h_exact_)(e) : quad_excess(e);
}

double PressureLaw::dh(double z) const {
  require(z > 0.0, Errc::domain, "enthalpy needs positive density");
  return dP_(z) / z;
}

double PressureLaw::Pi(double z) const { return Pi_excess(z - 1.0); }

double PressureLaw::Pi_excess(double e) const {
  require(e > -1.0, Errc::domain, "enthalpy potential needs positive density");
  if (Pi_exact_) return (*Pi_exact_)(e);
  // Pi(1+e) = int_0^e (e - t) h'(1+t) dt, smooth integrand, no nested quadrature
  return GaussRule<30>::get().integrate([&](double t) { return (e - t) * dh(1.0 + t); }, 0.0, e);
}

double PressureLaw::V() const { return std::sqrt(1.0 + dP(1.0)); }

double PressureLaw::C() const {
  const double v = V();
  return v + d2P(1.0) / (2.0 * v);
}

}  // namespace iaw
