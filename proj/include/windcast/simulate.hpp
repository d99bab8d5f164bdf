#pragma once

#include "windcast/model.hpp"
#include "windcast/series.hpp"
#include "windcast/types.hpp"

namespace windcast {

struct SimulationResult {
  WindSeries series;  // mean + error path, clipped at zero when requested
  VecX mean;          // deterministic component
  VecX eps;           // error process
  VecX z;             // innovations
  VecX eta;           // standardized draws
  VecX sigma;         // conditional scales
  index_t n_clipped = 0;
};

// Draws one path of length n on the 10-minute grid. The volatility recursion
// starts from its stationary level (falling back to alpha0 when the moment
// condition fails or the shock moment does not exist), so early observations
// are draws from the model, not a burn-in artifact. A seed pins the entire
// path bit-for-bit.
SimulationResult simulate(const ModelParams& params, const SeasonalSpec& spec,
                          index_t n, uint64_t seed,
                          utc_seconds start = 1185926400 /* 2007-08-01T00:00Z */,
                          std::int64_t step = 600, bool clip_negative = true);

// Error process only (no mean, no clipping): eps, z, eta, sigma.
SimulationResult simulate_process(const ModelParams& params, index_t n,
                                  uint64_t seed);

} // namespace windcast
