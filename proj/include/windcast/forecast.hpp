#pragma once

#include "windcast/model.hpp"
#include "windcast/types.hpp"

namespace windcast {

// Multi-step conditional-mean forecast issued at history[origin].
// history[i] sits at global time index t0_hist + i and the information set is
// history[0..origin]; entries past the origin are ignored. Future innovations
// are set to their zero mean and the filter recursions are run forward, so the
// one-step value coincides with the fitted one-step predictor exactly.
VecX forecast_mean(const FitResult& fit, const VecX& history, double t0_hist,
                   index_t origin, int horizon, int max_horizon = 144);

// Iterated expectation of sigma^delta for steps 1..horizon, conditioning on
// innovation path z and scale path sigma_delta (aligned arrays ending at the
// forecast origin). Future shock terms enter through their unconditional
// moment E[(|eta| - gamma eta)^delta].
VecX forecast_scale_from_paths(const ModelParams& params, const VecX& z,
                               const ArrX& sigma_delta, int horizon);

// Scale forecast from the end of the fitted sample.
VecX forecast_scale(const FitResult& fit, int horizon, int max_horizon = 144);

// Flat benchmark: repeat history[origin] for every step.
VecX persistence_forecast(const VecX& history, index_t origin, int horizon);

} // namespace windcast
