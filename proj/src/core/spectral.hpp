#pragma once
#include <array>
#include <cstddef>
#include <vector>

#include "core/field.hpp"

namespace iaw {

// Unnormalized r2c transform of a real field. The last axis is halved.
struct HalfSpectrum {
  Grid grid;
  std::vector<cplx> c;

  std::size_t last_len() const { return grid.n(grid.dims() - 1) / 2 + 1; }
  // wavenumber triple of coefficient slot i (unused axes are zero)
  std::array<double, 3> k(std::size_t i) const;
  // per-axis storage slot of coefficient i
  std::array<std::size_t, 3> slots(std::size_t i) const;
  // true if any axis of slot i sits on the Nyquist index
  bool nyquist(std::size_t i) const;
};

// Full complex spectrum, unnormalized.
struct FullSpectrum {
  Grid grid;
  std::vector<cplx> c;
  std::array<double, 3> k(std::size_t i) const;
};

HalfSpectrum forward(const RealField& f);
RealField inverse(const HalfSpectrum& s, std::string name = {});
FullSpectrum forward(const ComplexField& f);
ComplexField inverse(const FullSpectrum& s, std::string name = {});

// Spectral calculus on real periodic fields.
RealField derivative(const RealField& f, int axis, int order = 1);
RealField laplacian(const RealField& f);
// 2/3 rule: zero modes with |mode| > n/3 on every axis
void dealias(HalfSpectrum& s);
RealField dealiased(const RealField& f);
// shift along axis 0: returns f(x - shift)
RealField shifted(const RealField& f, double shift);

}  // namespace iaw
