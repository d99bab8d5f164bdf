#pragma once

#include "windcast/model.hpp"
#include "windcast/types.hpp"

namespace windcast {

// Sample autocorrelations with the 1/n (biased) normalization; values[0] = 1.
// band is the two-sided 95% white-noise bound 1.96/sqrt(n).
struct AcfResult {
  VecX values;
  double band = 0.0;
};
AcfResult acf(const VecX& x, int max_lag);

// Portmanteau whiteness statistic over the first `lags` autocorrelations,
// chi-square with lags - n_fitted_params degrees of freedom.
struct LjungBoxResult {
  double statistic = 0.0;
  int lags = 0;
  int df = 0;
  double p_value = 0.0;
};
LjungBoxResult ljung_box(const VecX& x, int lags, int n_fitted_params = 0);

// Density-normalized histogram with Freedman-Diaconis widths, plus the fitted
// innovation density evaluated at the bin centers.
struct HistogramDensity {
  VecX edges;    // size bins + 1
  VecX centers;  // size bins
  VecX density;  // observed, integrates to 1 over the binned range
  VecX fitted;   // model innovation density at the centers
};

struct ResidualSummary {
  double mse = 0.0;        // mean squared one-step prediction error
  double r_squared = 0.0;  // 1 - mse / var(w)
  HistogramDensity histogram;
};
ResidualSummary residual_summary(const FitResult& fit, const VecX& w);

} // namespace windcast
