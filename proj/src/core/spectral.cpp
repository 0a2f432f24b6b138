#include "core/spectral.hpp"

#include <fftw3.h>

#include <cmath>
#include <map>
#include <mutex>

#include "core/error.hpp"

namespace iaw {

namespace {

enum class Kind { r2c, c2r, c2c_fwd, c2c_bwd };

// Plans are created once per shape and executed through the new-array
// interface, which FFTW documents as thread safe.
class PlanCache {
 public:
  static PlanCache& get() {
    static PlanCache cache;
    return cache;
  }

  fftw_plan plan(const Grid& g, Kind kind) {
    std::vector<int> shape;
    for (int d = 0; d < g.dims(); ++d) shape.push_back(static_cast<int>(g.n(d)));
    Key key{shape, kind};
    std::lock_guard<std::mutex> lock(mu_);
    auto it = plans_.find(key);
    if (it != plans_.end()) return it->second;

    const std::size_t total = g.size();
    const std::size_t half = total / g.n(g.dims() - 1) * (g.n(g.dims() - 1) / 2 + 1);
    const unsigned flags = FFTW_ESTIMATE | FFTW_UNALIGNED;
    const int rank = static_cast<int>(shape.size());
    fftw_plan p = nullptr;
    switch (kind) {
      case Kind::r2c: {
        double* in = fftw_alloc_real(total);
        fftw_complex* out = fftw_alloc_complex(half);
        p = fftw_plan_dft_r2c(rank, shape.data(), in, out, flags);
        fftw_free(in);
        fftw_free(out);
        break;
      }
      case Kind::c2r: {
        fftw_complex* in = fftw_alloc_complex(half);
        double* out = fftw_alloc_real(total);
        p = fftw_plan_dft_c2r(rank, shape.data(), in, out, flags);
        fftw_free(in);
        fftw_free(out);
        break;
      }
      case Kind::c2c_fwd:
      case Kind::c2c_bwd: {
        fftw_complex* in = fftw_alloc_complex(total);
        fftw_complex* out = fftw_alloc_complex(total);
        p = fftw_plan_dft(rank, shape.data(), in, out, kind == Kind::c2c_fwd ? FFTW_FORWARD : FFTW_BACKWARD, flags);
        fftw_free(in);
        fftw_free(out);
        break;
      }
    }
    require(p != nullptr, Errc::internal, "fftw planner failed");
    plans_.emplace(key, p);
    return p;
  }

 private:
  struct Key {
    std::vector<int> shape;
    Kind kind;
    bool operator<(const Key& o) const {
      if (shape != o.shape) return shape < o.shape;
      return static_cast<int>(kind) < static_cast<int>(o.kind);
    }
  };
  std::mutex mu_;
  std::map<Key, fftw_plan> plans_;
};

fftw_complex* as_fftw(cplx* p) { return reinterpret_cast<fftw_complex*>(p); }

// per-axis storage slot of half-spectrum index i
std::array<std::size_t, 3> half_slots(const Grid& g, std::size_t i) {
  std::array<std::size_t, 3> s{0, 0, 0};
  const int D = g.dims();
  const std::size_t last = g.n(D - 1) / 2 + 1;
  s[D - 1] = i % last;
  std::size_t rest = i / last;
  for (int d = D - 2; d >= 0; --d) {
    s[d] = rest % g.n(d);
    rest /= g.n(d);
  }
  return s;
}

}  // namespace

std::array<double, 3> HalfSpectrum::k(std::size_t i) const {
  const auto sl = half_slots(grid, i);
  std::array<double, 3> k{0, 0, 0};
  for (int d = 0; d < grid.dims(); ++d) k[d] = grid.wavenumber(d, sl[d]);
  return k;
}

std::array<std::size_t, 3> HalfSpectrum::slots(std::size_t i) const { return half_slots(grid, i); }

bool HalfSpectrum::nyquist(std::size_t i) const {
  const auto sl = half_slots(grid, i);
  for (int d = 0; d < grid.dims(); ++d)
    if (grid.is_nyquist(d, sl[d])) return true;
  return false;
}

std::array<double, 3> FullSpectrum::k(std::size_t i) const {
  const auto idx = grid.unravel(i);
  std::array<double, 3> k{0, 0, 0};
  for (int d = 0; d < grid.dims(); ++d) k[d] = grid.wavenumber(d, idx[d]);
  return k;
}

HalfSpectrum forward(const RealField& f) {
  HalfSpectrum s;
  s.grid = f.grid;
  const std::size_t half = f.size() / f.grid.n(f.grid.dims() - 1) * s.last_len();
  s.c.resize(half);
  std::vector<double> in(f.v);
  fftw_execute_dft_r2c(PlanCache::get().plan(f.grid, Kind::r2c), in.data(), as_fftw(s.c.data()));
  return s;
}

RealField inverse(const HalfSpectrum& s, std::string name) {
  RealField f(s.grid, std::move(name));
  std::vector<cplx> in(s.c);  // c2r destroys its input
  fftw_execute_dft_c2r(PlanCache::get().plan(s.grid, Kind::c2r), as_fftw(in.data()), f.v.data());
  const double inv = 1.0 / static_cast<double>(f.size());
  for (auto& x : f.v) x *= inv;
  return f;
}

FullSpectrum forward(const ComplexField& f) {
  FullSpectrum s;
  s.grid = f.grid;
  s.c.resize(f.size());
  std::vector<cplx> in(f.v);
  fftw_execute_dft(PlanCache::get().plan(f.grid, Kind::c2c_fwd), as_fftw(in.data()), as_fftw(s.c.data()));
  return s;
}

ComplexField inverse(const FullSpectrum& s, std::string name) {
  ComplexField f(s.grid, std::move(name));
  std::vector<cplx> in(s.c);
  fftw_execute_dft(PlanCache::get().plan(s.grid, Kind::c2c_bwd), as_fftw(in.data()), as_fftw(f.v.data()));
  const double inv = 1.0 / static_cast<double>(f.size());
  for (auto& x : f.v) x *= inv;
  return f;
}

RealField derivative(const RealField& f, int axis, int order) {
  require(axis >= 0 && axis < f.grid.dims(), Errc::invalid_argument, "derivative axis out of range");
  require(order >= 0, Errc::invalid_argument, "negative derivative order");
  auto s = forward(f);
  for (std::size_t i = 0; i < s.c.size(); ++i) {
    // odd derivatives have no real Nyquist representative
    if (order % 2 == 1 && f.grid.is_nyquist(axis, half_slots(f.grid, i)[axis])) {
      s.c[i] = 0.0;
      continue;
    }
    s.c[i] *= std::pow(cplx(0.0, s.k(i)[axis]), order);
  }
  return inverse(s, f.name);
}

RealField laplacian(const RealField& f) {
  auto s = forward(f);
  for (std::size_t i = 0; i < s.c.size(); ++i) {
    const auto k = s.k(i);
    s.c[i] *= -(k[0] * k[0] + k[1] * k[1] + k[2] * k[2]);
  }
  return inverse(s, f.name);
}

void dealias(HalfSpectrum& s) {
  const Grid& g = s.grid;
  for (std::size_t i = 0; i < s.c.size(); ++i) {
    const auto sl = half_slots(g, i);
    for (int d = 0; d < g.dims(); ++d) {
      if (3 * std::abs(g.mode(d, sl[d])) > static_cast<long>(g.n(d))) {
        s.c[i] = 0.0;
        break;
      }
    }
  }
}

RealField dealiased(const RealField& f) {
  auto s = forward(f);
  dealias(s);
  return inverse(s, f.name);
}

RealField shifted(const RealField& f, double shift) {
  auto s = forward(f);
  for (std::size_t i = 0; i < s.c.size(); ++i) {
    const double k = s.k(i)[0];
    // the sampled Nyquist cosine shifts into cos(k shift) times itself
    if (f.grid.is_nyquist(0, half_slots(f.grid, i)[0]))
      s.c[i] *= std::cos(k * shift);
    else
      s.c[i] *= std::polar(1.0, -k * shift);
  }
  return inverse(s, f.name);
}

}  // namespace iaw
