#pragma once
#include <vector>

#include "core/field.hpp"
#include "core/spectral.hpp"
#include "dispersive/dispersion.hpp"

namespace iaw {

struct HalfwaveResult {
  double t = 0.0;
  RealField re, im;
  double l2 = 0.0;
  double sup = 0.0;
  double edge_fraction = 0.0;  // share of L2 mass within 5% of the box edge
  bool wrapped = false;        // edge_fraction above the threshold
};

// e^{itP(D)} applied to a fixed real field; the transform is taken once.
class HalfwaveEvolver {
 public:
  HalfwaveEvolver(const RealField& f0, const DispersionProfile& profile, double wrap_threshold = 1e-3);
  HalfwaveResult at(double t) const;

 private:
  HalfSpectrum s0_;
  std::vector<double> p_;
  double wrap_threshold_;
};

// generic complex input, used for the group property
ComplexField evolve_halfwave(const ComplexField& f0, double t, const DispersionProfile& profile);

double edge_mass_fraction(const RealField& re, const RealField& im, double band = 0.05);

}  // namespace iaw
