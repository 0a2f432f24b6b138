#pragma once
#include <complex>
#include <string>
#include <vector>

#include "core/grid.hpp"

namespace iaw {

using cplx = std::complex<double>;

template <class T>
struct Field {
  Grid grid;
  std::vector<T> v;
  std::string name;

  Field() = default;
  explicit Field(const Grid& g, std::string nm = {}) : grid(g), v(g.size(), T{}), name(std::move(nm)) {}
  Field(const Grid& g, std::vector<T> vals, std::string nm = {}) : grid(g), v(std::move(vals)), name(std::move(nm)) {}

  std::size_t size() const { return v.size(); }
  T& operator[](std::size_t i) { return v[i]; }
  const T& operator[](std::size_t i) const { return v[i]; }
};

using RealField = Field<double>;
using ComplexField = Field<cplx>;

// discrete L2 norm including the cell volume
double l2_norm(const RealField& f);
double l2_norm(const ComplexField& f);
double sup_norm(const RealField& f);
double sup_norm(const ComplexField& f);
double mean(const RealField& f);
double integral(const RealField& f);
// relative-size helper used in preconditions: root mean square
double rms(const RealField& f);

RealField operator+(const RealField& a, const RealField& b);
RealField operator-(const RealField& a, const RealField& b);
RealField operator*(double s, const RealField& a);
ComplexField to_complex(const RealField& f);

}  // namespace iaw
