#include "windcast/arfima.hpp"

#include <Eigen/Eigenvalues>

namespace windcast {

bool stable_recursion(const VecX& coef) {
  const index_t k = coef.size();
  if (k == 0) return true;
  if (coef.tail(1)[0] == 0.0) return stable_recursion(coef.head(k - 1));
  MatX companion = MatX::Zero(k, k);
  companion.row(0) = coef.transpose();
  companion.block(1, 0, k - 1, k - 1).setIdentity();
  const auto eigs = companion.eigenvalues();
  // Exact unit roots come back from the eigensolver a round-off below 1, so
  // reject within a small band. Kept strictly below the 1e-12 the estimation
  // transform leaves between its parameter box and the boundary.
  for (index_t i = 0; i < eigs.size(); ++i)
    if (std::abs(eigs[i]) >= 1.0 - 1e-13) return false;
  return true;
}

ArfimaParams ArfimaParams::make(double d, VecX ar, VecX ma, int truncation) {
  if (!(std::abs(d) < 0.5))
    throw std::invalid_argument("ArfimaParams: need |d| < 0.5");
  if (truncation < 1)
    throw std::invalid_argument("ArfimaParams: truncation must be >= 1");
  if (!stable_recursion(ar))
    throw std::invalid_argument("ArfimaParams: AR polynomial is not stationary");
  // theta(B) = 1 + sum theta_i B^i is invertible iff the recursion with
  // coefficients -theta is stable.
  if (!stable_recursion(-ma))
    throw std::invalid_argument("ArfimaParams: MA polynomial is not invertible");
  ArfimaParams p;
  p.d = d;
  p.ar = std::move(ar);
  p.ma = std::move(ma);
  p.truncation = truncation;
  return p;
}

VecX frac_diff_weights(double d, index_t n) {
  if (n < 1) throw std::invalid_argument("frac_diff_weights: need n >= 1");
  VecX w(n);
  w[0] = 1.0;
  for (index_t k = 1; k < n; ++k)
    w[k] = w[k - 1] * (static_cast<double>(k) - 1.0 - d) / static_cast<double>(k);
  return w;
}

VecX apply_weights(const VecX& x, const VecX& w) {
  const index_t n = x.size(), m = w.size();
  VecX u = VecX::Zero(n);
  // One shifted-add pass per lag keeps the memory walk linear.
  for (index_t k = 0; k < std::min(m, n); ++k)
    u.tail(n - k) += w[k] * x.head(n - k);
  return u;
}

VecX solve_weights(const VecX& u, const VecX& w) {
  const index_t n = u.size(), m = w.size();
  if (m < 1 || w[0] != 1.0)
    throw std::invalid_argument("solve_weights: w[0] must be 1");
  VecX x(n);
  // rev holds x reversed so the inner product reads both factors forward.
  VecX rev(n);
  const double* wp = w.data();
  for (index_t t = 0; t < n; ++t) {
    const index_t lags = std::min(t, m - 1);
    double acc = 0.0;
    if (lags > 0)
      acc = Eigen::Map<const VecX>(wp + 1, lags)
                .dot(Eigen::Map<const VecX>(rev.data() + (n - t), lags));
    const double xt = u[t] - acc;
    x[t] = xt;
    rev[n - 1 - t] = xt;
  }
  return x;
}

namespace {

// v_t = x_t - sum phi_i x_{t-i}
VecX apply_ar(const VecX& x, const VecX& phi) {
  const index_t n = x.size();
  VecX v = x;
  for (index_t i = 1; i <= phi.size(); ++i)
    v.tail(n - std::min(i, n)) -= phi[i - 1] * x.head(n - std::min(i, n));
  return v;
}

// x_t = v_t + sum phi_i x_{t-i}
VecX invert_ar(const VecX& v, const VecX& phi) {
  const index_t n = v.size(), j = phi.size();
  if (j == 0) return v;
  VecX x(n);
  for (index_t t = 0; t < n; ++t) {
    double acc = v[t];
    for (index_t i = 1; i <= j && i <= t; ++i) acc += phi[i - 1] * x[t - i];
    x[t] = acc;
  }
  return x;
}

// v_t = z_t + sum theta_i z_{t-i}
VecX apply_ma(const VecX& z, const VecX& theta) {
  const index_t n = z.size();
  VecX v = z;
  for (index_t i = 1; i <= theta.size(); ++i)
    v.tail(n - std::min(i, n)) += theta[i - 1] * z.head(n - std::min(i, n));
  return v;
}

// z_t = v_t - sum theta_i z_{t-i}
VecX invert_ma(const VecX& v, const VecX& theta) {
  const index_t n = v.size(), q = theta.size();
  if (q == 0) return v;
  VecX z(n);
  for (index_t t = 0; t < n; ++t) {
    double acc = v[t];
    for (index_t i = 1; i <= q && i <= t; ++i) acc -= theta[i - 1] * z[t - i];
    z[t] = acc;
  }
  return z;
}

} // namespace

VecX filter_to_innovations(const VecX& eps, const ArfimaParams& params) {
  const VecX w = frac_diff_weights(params.d, params.truncation + 1);
  return invert_ma(apply_ar(apply_weights(eps, w), params.ar), params.ma);
}

VecX inverse_filter(const VecX& z, const ArfimaParams& params) {
  const VecX w = frac_diff_weights(params.d, params.truncation + 1);
  return solve_weights(invert_ar(apply_ma(z, params.ma), params.ar), w);
}

} // namespace windcast
