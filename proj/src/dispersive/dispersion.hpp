#pragma once

namespace iaw {

// Radial dispersion relation P(r) = r sqrt(h'(1) + 1/(1 + r^2)).
class DispersionProfile {
 public:
  explicit DispersionProfile(double hp1);

  double hp1() const { return hp1_; }
  double P(double r) const;
  double dP(double r) const;
  double d2P(double r) const;
  double d3P(double r) const;

  // closed form sqrt(1 + sqrt(4 + 3/h'(1)))
  double inflection_closed_form() const;
  // positive root of P'' by bracketing and toms748
  double inflection_bisection() const;
  // closed form, after checking the two agree to 1e-8
  double inflection_root() const;

  double max_group_speed() const;

 private:
  double hp1_;
};

}  // namespace iaw
