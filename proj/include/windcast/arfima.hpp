#pragma once

#include <stdexcept>

#include "windcast/types.hpp"

namespace windcast {

// Error-process filter parameters: phi(B)(1-B)^d eps_t = theta(B) Z_t with
// theta(B) = 1 + theta_1 B + ... The fractional operator is truncated at
// `truncation` lags everywhere; weights decay like k^(-1-d), so 1000 lags
// leave a negligible tail for |d| < 0.5.
struct ArfimaParams {
  double d = 0.0;
  VecX ar;
  VecX ma;
  int truncation = 1000;

  // Validates |d| < 0.5, AR stationarity and MA invertibility (companion
  // eigenvalues strictly inside the unit circle).
  static ArfimaParams make(double d, VecX ar, VecX ma, int truncation = 1000);
};

// True when the recursion x_t = coef_1 x_{t-1} + ... + coef_k x_{t-k} is
// stable, i.e. all companion eigenvalues lie strictly inside the unit circle.
bool stable_recursion(const VecX& coef);

// Binomial weights of (1-B)^d: pi_0 = 1, pi_k = pi_{k-1} (k-1-d)/k.
VecX frac_diff_weights(double d, index_t n);

// Truncated convolution u_t = sum_{k=0..min(t,K)} w_k x_{t-k}, K = len(w)-1.
VecX apply_weights(const VecX& x, const VecX& w);

// Exact inverse of apply_weights: solves the triangular system
// x_t = u_t - sum_{k=1..min(t,K)} w_k x_{t-k}.  (w_0 must be 1.)
VecX solve_weights(const VecX& u, const VecX& w);

// Whitening direction of the full filter: fractional difference, apply the AR
// polynomial, then invert the MA side recursively. Pre-sample values are zero.
VecX filter_to_innovations(const VecX& eps, const ArfimaParams& params);

// Coloring direction: apply the MA polynomial, invert AR, then invert the
// truncated fractional difference. Mutual inverse of filter_to_innovations on
// any finite sample (both directions solve the same truncated filter exactly).
VecX inverse_filter(const VecX& z, const ArfimaParams& params);

} // namespace windcast
