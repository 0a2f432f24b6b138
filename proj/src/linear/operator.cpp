#include "linear/operator.hpp"

#include <cmath>

#include "core/error.hpp"
#include "core/spectral.hpp"
#include "linear/dense_lu.hpp"

namespace iaw {

double max_weight(double eps) { return std::sqrt(3.0) * eps / 4.0; }

LinearizedOperator::LinearizedOperator(const SolitaryWave& w, double eta, double a) : w_(&w), eta_(eta), a_(a) {
  require(a >= 0.0 && a < max_weight(w.eps), Errc::invalid_argument, "weight must satisfy 0 <= a < sqrt(3) eps/4");
  require(std::isfinite(eta), Errc::invalid_argument, "eta must be finite");
  const Grid& g = w.grid;
  d_ = RealField(g);
  rho_ = RealField(g);
  hp_ = RealField(g);
  ew_ = RealField(g);
  double s = 0.0;
  for (std::size_t j = 0; j < g.size(); ++j) {
    d_.v[j] = w.c - w.u.v[j];
    rho_.v[j] = 1.0 + w.n.v[j];
    hp_.v[j] = w.law.dh(rho_.v[j]);
    ew_.v[j] = std::exp(w.phi.v[j]) + eta * eta;
    s += ew_.v[j];
  }
  ew_mean_ = s / static_cast<double>(g.size());
}

RealField LinearizedOperator::Da(const RealField& f) const {
  RealField r = derivative(f, 0);
  for (std::size_t j = 0; j < r.size(); ++j) r.v[j] -= a_ * f.v[j];
  return r;
}

RealField LinearizedOperator::elliptic_inverse(const RealField& f) const {
  // E = E0 + (ew - mean) with E0 circulant; the diagonal part is O(eps^2)
  auto solve0 = [&](const RealField& b) {
    auto s = forward(b);
    for (std::size_t i = 0; i < s.c.size(); ++i) {
      const double xi = s.nyquist(i) ? 0.0 : s.k(i)[0];
      const cplx da(-a_, xi);
      s.c[i] /= ew_mean_ - da * da;
    }
    return inverse(s);
  };
  RealField x = solve0(f);
  const double fn = std::max(sup_norm(f), 1e-300);
  for (int it = 0; it < 200; ++it) {
    RealField rhs = f;
    for (std::size_t j = 0; j < rhs.size(); ++j) rhs.v[j] -= (ew_.v[j] - ew_mean_) * x.v[j];
    RealField xn = solve0(rhs);
    const double dx = sup_norm(xn - x);
    x = std::move(xn);
    if (dx <= 1e-16 * fn) break;
  }
  x.grid = f.grid;
  return x;
}

LinearizedOperator::Parts LinearizedOperator::apply_with_scale(const FieldPair& u) const {
  const std::size_t N = u.n.size();
  RealField dn(u.n.grid), rpsi(u.n.grid);
  RealField dpsi = Da(u.psi);
  for (std::size_t j = 0; j < N; ++j) {
    dn.v[j] = d_.v[j] * u.n.v[j];
    rpsi.v[j] = rho_.v[j] * dpsi.v[j];
  }
  RealField b11 = Da(dn);
  RealField b12 = -1.0 * Da(rpsi);
  for (std::size_t j = 0; j < N; ++j) b12.v[j] += eta_ * eta_ * rho_.v[j] * u.psi.v[j];
  RealField b21 = elliptic_inverse(u.n);
  for (std::size_t j = 0; j < N; ++j) b21.v[j] = -(hp_.v[j] * u.n.v[j] + b21.v[j]);
  RealField b22(u.n.grid);
  for (std::size_t j = 0; j < N; ++j) b22.v[j] = d_.v[j] * dpsi.v[j];
  Parts p;
  p.total.n = b11 + b12;
  p.total.psi = b21 + b22;
  p.total.n.name = "n";
  p.total.psi.name = "psi";
  p.scale = l2_norm(b11) + l2_norm(b12) + l2_norm(b21) + l2_norm(b22);
  return p;
}

FieldPair LinearizedOperator::apply(const FieldPair& u) const { return apply_with_scale(u).total; }

FieldPair LinearizedOperator::apply_gradient_form(const RealField& n, const RealField& v) const {
  require(eta_ == 0.0 && a_ == 0.0, Errc::invalid_argument, "gradient form needs eta = 0 and a = 0");
  const std::size_t N = n.size();
  RealField flux(n.grid);
  for (std::size_t j = 0; j < N; ++j) flux.v[j] = d_.v[j] * n.v[j] - rho_.v[j] * v.v[j];
  FieldPair out;
  out.n = derivative(flux, 0);
  out.psi = elliptic_inverse(n);
  for (std::size_t j = 0; j < N; ++j) out.psi.v[j] = -hp_.v[j] * n.v[j] - out.psi.v[j] + d_.v[j] * v.v[j];
  return out;
}

Eigen::MatrixXd LinearizedOperator::dense() const {
  const Grid& g = w_->grid;
  const int N = static_cast<int>(g.n(0));

  // first columns of the circulant D_a and D_a^2
  RealField e0(g);
  e0.v[0] = 1.0;
  RealField da_col = Da(e0);
  RealField da2_col = Da(da_col);
  auto circ = [N](const RealField& col) {
    Eigen::MatrixXd m(N, N);
    for (int k = 0; k < N; ++k)
      for (int j = 0; j < N; ++j) m(j, k) = col.v[(j - k + N) % N];
    return m;
  };

  Eigen::MatrixXd L(2 * N, 2 * N);
  {
    Eigen::MatrixXd Dm = circ(da_col);
    for (int k = 0; k < N; ++k) L.block(0, k, N, 1) = Dm.col(k) * d_.v[k];        // D_a diag(d)
    for (int j = 0; j < N; ++j) L.block(N + j, N, 1, N) = Dm.row(j) * d_.v[j];    // diag(d) D_a
    // -D_a diag(rho) D_a, one FFT per column
    RealField col(g);
    for (int k = 0; k < N; ++k) {
      for (int j = 0; j < N; ++j) col.v[j] = rho_.v[j] * Dm(j, k);
      RealField dc = Da(col);
      for (int j = 0; j < N; ++j) L(j, N + k) = -dc.v[j];
      L(k, N + k) += eta_ * eta_ * rho_.v[k];
    }
  }
  {
    Eigen::MatrixXd E = -circ(da2_col);
    for (int j = 0; j < N; ++j) E(j, j) += ew_.v[j];
    DenseLU lu(std::move(E));
    rcond_ = lu.rcond();
    require(rcond_ > 1e-12, Errc::domain, "elliptic block is numerically singular");
    Eigen::MatrixXd Ei = Eigen::MatrixXd::Identity(N, N);
    lu.solve_in_place(Ei);
    L.block(N, 0, N, N) = -Ei;
    for (int j = 0; j < N; ++j) L(N + j, j) -= hp_.v[j];
  }
  return L;
}

}  // namespace iaw
