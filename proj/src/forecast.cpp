#include "windcast/forecast.hpp"

#include <algorithm>
#include <cmath>

#include "windcast/errors.hpp"
#include "windcast/seasonal.hpp"

namespace windcast {

VecX forecast_mean(const FitResult& fit, const VecX& history, double t0_hist,
                   index_t origin, int horizon, int max_horizon) {
  if (horizon < 1) throw std::invalid_argument("forecast_mean: horizon must be >= 1");
  if (horizon > max_horizon)
    throw ConfigError("forecast_mean: horizon " + std::to_string(horizon) +
                      " exceeds the configured maximum " + std::to_string(max_horizon));
  if (origin < 0 || origin >= history.size())
    throw std::invalid_argument("forecast_mean: origin outside history");

  const auto& prm = fit.params;
  const auto& sp = fit.spec;
  const index_t nh = origin + 1;
  const index_t j = prm.arfima.ar.size(), q = prm.arfima.ma.size();
  const VecX wts = frac_diff_weights(prm.arfima.d, prm.arfima.truncation + 1);
  const index_t klen = wts.size();

  const MatX X = design_matrix(sp, t0_hist, nh);
  const index_t total = nh + horizon;
  VecX eps = VecX::Zero(total), u = VecX::Zero(total), z = VecX::Zero(total);
  eps.head(nh) = history.head(nh) - X * prm.theta;

  // Whitening pass over the observed stretch; the same u and z arrays then
  // carry the extension, with future z pinned at zero.
  u.head(nh) = apply_weights(eps.head(nh), wts);
  {
    VecX v = u.head(nh);
    for (index_t i = 1; i <= j; ++i)
      v.tail(nh - std::min(i, nh)) -= prm.arfima.ar[i - 1] * u.segment(0, nh - std::min(i, nh));
    for (index_t t = 0; t < nh; ++t) {
      double acc = v[t];
      for (index_t i = 1; i <= q && i <= t; ++i) acc -= prm.arfima.ma[i - 1] * z[t - i];
      z[t] = acc;
    }
  }

  VecX out(horizon);
  for (int h = 1; h <= horizon; ++h) {
    const index_t t = origin + h;
    double v = 0.0;  // z[t] = 0
    for (index_t i = 1; i <= q && i <= t; ++i) v += prm.arfima.ma[i - 1] * z[t - i];
    double uf = v;
    for (index_t i = 1; i <= j && i <= t; ++i) uf += prm.arfima.ar[i - 1] * u[t - i];
    u[t] = uf;
    double ef = uf;
    const index_t lags = std::min(t, klen - 1);
    for (index_t k2 = 1; k2 <= lags; ++k2) ef -= wts[k2] * eps[t - k2];
    eps[t] = ef;
    const VecX row = regressor_row(sp, t0_hist + static_cast<double>(t));
    out[h - 1] = row.dot(prm.theta) + ef;
  }
  return out;
}

VecX forecast_scale_from_paths(const ModelParams& params, const VecX& z,
                               const ArrX& sigma_delta, int horizon) {
  if (horizon < 1)
    throw std::invalid_argument("forecast_scale: horizon must be >= 1");
  if (z.size() != sigma_delta.size() || z.size() < 1)
    throw std::invalid_argument("forecast_scale: path lengths disagree");
  const auto& ap = params.aparch;
  const index_t Q = ap.q(), P = ap.p(), n = z.size();
  if (n < std::max(Q, P))
    throw std::invalid_argument("forecast_scale: path shorter than the recursion order");
  VecX kappa(Q);
  for (index_t l = 0; l < Q; ++l)
    kappa[l] = asym_power_moment(ap.gamma[l], ap.delta, params.skewt);

  VecX ehat(horizon);
  for (int h = 1; h <= horizon; ++h) {
    double acc = ap.alpha0;
    for (index_t l = 1; l <= Q; ++l) {
      const index_t idx = n - 1 + h - l;
      if (idx <= n - 1) {
        const double zt = z[idx];
        acc += ap.alpha[l - 1] * std::pow(std::abs(zt) - ap.gamma[l - 1] * zt, ap.delta);
      } else {
        acc += ap.alpha[l - 1] * kappa[l - 1] * ehat[idx - n];
      }
    }
    for (index_t m = 1; m <= P; ++m) {
      const index_t idx = n - 1 + h - m;
      acc += ap.beta[m - 1] * (idx <= n - 1 ? sigma_delta[idx] : ehat[idx - n]);
    }
    ehat[h - 1] = acc;
  }
  return ehat;
}

VecX forecast_scale(const FitResult& fit, int horizon, int max_horizon) {
  if (horizon > max_horizon)
    throw ConfigError("forecast_scale: horizon " + std::to_string(horizon) +
                      " exceeds the configured maximum " + std::to_string(max_horizon));
  if (fit.z.size() < 1 || fit.sigma.size() != fit.z.size())
    throw std::invalid_argument("forecast_scale: fit carries no residual paths");
  const ArrX sd = fit.sigma.array().pow(fit.params.aparch.delta);
  return forecast_scale_from_paths(fit.params, fit.z, sd, horizon);
}

VecX persistence_forecast(const VecX& history, index_t origin, int horizon) {
  if (horizon < 1)
    throw std::invalid_argument("persistence_forecast: horizon must be >= 1");
  if (origin < 0 || origin >= history.size())
    throw std::invalid_argument("persistence_forecast: origin outside history");
  return VecX::Constant(horizon, history[origin]);
}

} // namespace windcast
