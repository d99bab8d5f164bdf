#include "windcast/aparch.hpp"

#include <stdexcept>

namespace windcast {

AparchParams AparchParams::make(double alpha0, VecX alpha, VecX gamma, VecX beta,
                                double delta) {
  if (!(alpha0 > 0.0)) throw std::invalid_argument("AparchParams: alpha0 must be positive");
  if (alpha.size() != gamma.size())
    throw std::invalid_argument("AparchParams: alpha and gamma lengths differ");
  for (index_t i = 0; i < alpha.size(); ++i) {
    if (alpha[i] < 0.0) throw std::invalid_argument("AparchParams: alpha must be >= 0");
    if (!(std::abs(gamma[i]) < 1.0))
      throw std::invalid_argument("AparchParams: need |gamma| < 1");
  }
  for (index_t i = 0; i < beta.size(); ++i)
    if (beta[i] < 0.0) throw std::invalid_argument("AparchParams: beta must be >= 0");
  if (!(delta > 0.0)) throw std::invalid_argument("AparchParams: delta must be positive");
  AparchParams p;
  p.alpha0 = alpha0;
  p.alpha = std::move(alpha);
  p.gamma = std::move(gamma);
  p.beta = std::move(beta);
  p.delta = delta;
  return p;
}

ArrX aparch_scale_path(const VecX& z, const AparchParams& params) {
  const index_t n = z.size();
  if (n < 1) throw std::invalid_argument("aparch_scale_path: empty input");
  const index_t Q = params.q(), P = params.p();
  const ArrX za = z.array();

  // Shock terms per ARCH lag; each a vectorized pow pass.
  std::vector<ArrX> shock(static_cast<size_t>(Q));
  for (index_t l = 0; l < Q; ++l)
    shock[static_cast<size_t>(l)] = (za.abs() - params.gamma[l] * za).pow(params.delta);

  const double g1 = Q > 0 ? params.gamma[0] : 0.0;
  const double init = (za.abs() - g1 * za).pow(params.delta).mean();

  ArrX sd(n);
  for (index_t t = 0; t < n; ++t) {
    double acc = params.alpha0;
    for (index_t l = 1; l <= Q; ++l)
      acc += params.alpha[l - 1] * (t - l >= 0 ? shock[static_cast<size_t>(l - 1)][t - l] : init);
    for (index_t m = 1; m <= P; ++m)
      acc += params.beta[m - 1] * (t - m >= 0 ? sd[t - m] : init);
    sd[t] = acc;
  }
  return sd;
}

double stationarity_margin(const AparchParams& params, const SkewTParams& innovations) {
  double margin = params.beta.sum();
  for (index_t l = 0; l < params.q(); ++l)
    margin += params.alpha[l]
            * asym_power_moment(params.gamma[l], params.delta, innovations);
  return margin;
}

double stationary_scale_level(const AparchParams& params, const SkewTParams& innovations) {
  const double margin = stationarity_margin(params, innovations);
  if (!(margin < 1.0))
    throw std::invalid_argument("stationary_scale_level: recursion is not stationary");
  return params.alpha0 / (1.0 - margin);
}

} // namespace windcast
