#include "windcast/simulate.hpp"

#include <cmath>

#include "windcast/rng.hpp"
#include "windcast/seasonal.hpp"

namespace windcast {

namespace {

// eta draws in, (z, sigma) out. Pre-sample sigma^delta and shock terms sit at
// the stationary level so the path needs no burn-in.
void scale_recursion(const ModelParams& params, const VecX& eta, VecX& z,
                     VecX& sigma) {
  const auto& ap = params.aparch;
  const index_t n = eta.size(), Q = ap.q(), P = ap.p();
  const double delta = ap.delta;

  VecX kappa(Q);
  bool have_kappa = true;
  for (index_t l = 0; l < Q && have_kappa; ++l) {
    try {
      kappa[l] = asym_power_moment(ap.gamma[l], delta, params.skewt);
    } catch (const std::exception&) {
      have_kappa = false;
    }
  }
  double level = ap.alpha0;
  if (have_kappa) {
    const double margin = ap.beta.sum() + ap.alpha.dot(kappa);
    if (margin < 1.0) level = ap.alpha0 / (1.0 - margin);
  }

  z.resize(n);
  sigma.resize(n);
  VecX sd(n);
  for (index_t t = 0; t < n; ++t) {
    double acc = ap.alpha0;
    for (index_t l = 1; l <= Q; ++l) {
      const index_t idx = t - l;
      double shock;
      if (idx >= 0) {
        const double zi = z[idx];
        shock = std::pow(std::abs(zi) - ap.gamma[l - 1] * zi, delta);
      } else {
        shock = have_kappa ? kappa[l - 1] * level : level;
      }
      acc += ap.alpha[l - 1] * shock;
    }
    for (index_t m = 1; m <= P; ++m)
      acc += ap.beta[m - 1] * (t - m >= 0 ? sd[t - m] : level);
    sd[t] = acc;
    sigma[t] = std::pow(acc, 1.0 / delta);
    z[t] = sigma[t] * eta[t];
  }
}

} // namespace

SimulationResult simulate_process(const ModelParams& params, index_t n,
                                  uint64_t seed) {
  if (n < 1) throw std::invalid_argument("simulate_process: need n >= 1");
  Rng rng(seed);
  SimulationResult out;
  out.eta = skew_t_sample(params.skewt, rng, n);
  scale_recursion(params, out.eta, out.z, out.sigma);
  out.eps = inverse_filter(out.z, params.arfima);
  return out;
}

SimulationResult simulate(const ModelParams& params, const SeasonalSpec& spec0,
                          index_t n, uint64_t seed, utc_seconds start,
                          std::int64_t step, bool clip_negative) {
  SimulationResult out = simulate_process(params, n, seed);
  const SeasonalSpec spec = params.p.size() ? spec0.with_p(params.p) : spec0;
  if (params.theta.size() != spec.n_columns())
    throw std::invalid_argument("simulate: theta length does not match the design");
  out.mean = design_matrix(spec, 0.0, n) * params.theta;
  VecX w = out.mean + out.eps;
  if (clip_negative) {
    for (index_t i = 0; i < n; ++i)
      if (w[i] < 0.0) {
        w[i] = 0.0;
        ++out.n_clipped;
      }
  }
  out.series.start = start;
  out.series.step = step;
  out.series.values = std::move(w);
  out.series.gap_mask.assign(static_cast<size_t>(n), false);
  return out;
}

} // namespace windcast
