#pragma once

#include "windcast/skewt.hpp"
#include "windcast/types.hpp"

namespace windcast {

// Conditional-scale recursion
//   sigma_t^delta = alpha0 + sum_l alpha_l (|Z_{t-l}| - gamma_l Z_{t-l})^delta
//                          + sum_m beta_m sigma_{t-m}^delta
// gamma_l < 0 makes positive shocks the variance-raising side.
struct AparchParams {
  double alpha0 = 1.0;
  VecX alpha;   // length Q
  VecX gamma;   // length Q, each in (-1, 1)
  VecX beta;    // length P
  double delta = 2.0;

  static AparchParams make(double alpha0, VecX alpha, VecX gamma, VecX beta, double delta);

  index_t q() const { return alpha.size(); }
  index_t p() const { return beta.size(); }
};

// sigma^delta path aligned with z (entry t is the scale for observation t).
// Pre-sample shock terms and pre-sample sigma^delta are both initialized to
// the sample mean of (|z_t| - gamma_1 z_t)^delta over the input (gamma_1 = 0
// when Q = 0), the conditional-likelihood convention that makes the path a
// deterministic function of the data.
ArrX aparch_scale_path(const VecX& z, const AparchParams& params);

// sum_l alpha_l E[(|eta|-gamma_l eta)^delta] + sum_m beta_m. Below 1 the
// sigma^delta process has a finite stationary mean.
double stationarity_margin(const AparchParams& params, const SkewTParams& innovations);

// alpha0 / (1 - margin); throws when the margin is >= 1.
double stationary_scale_level(const AparchParams& params, const SkewTParams& innovations);

} // namespace windcast
