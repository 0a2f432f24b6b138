#pragma once
#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace iaw {

// Barotropic pressure P(rho) with the enthalpy h(z) = int_1^z P'(s)/s ds.
class PressureLaw {
 public:
  using Fn = std::function<double(double)>;

  // P = rho
  static PressureLaw isothermal();
  // P = K rho^gamma
  static PressureLaw polytropic(double K, double gamma);
  // P = sum_k coeffs[k] rho^(k+1)
  static PressureLaw polynomial(std::vector<double> coeffs);
  // "isothermal", "polytropic:K:gamma" or "poly:a1,a2,..."
  static PressureLaw parse(const std::string& spec);

  const std::string& name() const { return name_; }
  double P(double z) const { return P_(z); }
  double dP(double z) const { return dP_(z); }
  double d2P(double z) const { return d2P_(z); }

  double h(double z) const;
  // h(1 + e) without the rounding of forming 1 + e
  double h_excess(double e) const;
  double dh(double z) const;
  // adaptive Gauss-Kronrod evaluation, used when no closed form exists
  double h_quadrature(double z) const;
  // Pi(z) = int_1^z h(s) ds, so Pi'' = h' and Pi(1) = Pi'(1) = 0
  double Pi(double z) const;
  double Pi_excess(double e) const;

  double hp1() const { return dP(1.0); }
  double V() const;
  double C() const;

 private:
  double quad_excess(double e) const;

  std::string name_;
  Fn P_, dP_, d2P_;
  // closed forms in terms of the excess density e = z - 1
  std::optional<Fn> h_exact_, Pi_exact_;
};

}  // namespace iaw
