#pragma once

#include "windcast/rng.hpp"
#include "windcast/types.hpp"

namespace windcast {

// Skewed Student-t innovation law built from two differently scaled halves of
// a t distribution. xi > 1 tilts mass to the right, xi = 1 is symmetric. All
// public entry points are in the standardized parameterization: the density,
// the samples and the moments refer to the zero-mean unit-variance variable
// eta used by the volatility recursion.
struct SkewTParams {
  double xi = 1.0;
  double nu = 8.0;

  static SkewTParams make(double xi, double nu);
};

// Affine constants taking the raw (printed-form) variable to eta:
// eta = (x_raw - mean_shift) / scale.
struct SkewTStandardization {
  double mean_shift;
  double scale;
};

// Closed-form moments of the two-piece construction; no quadrature involved.
SkewTStandardization skew_t_standardization(const SkewTParams& params);

double skew_t_logpdf(double x, const SkewTParams& params);

// Vectorized form for likelihood loops.
ArrX skew_t_logpdf(const ArrX& x, const SkewTParams& params);

// n iid standardized draws; the stream is fully pinned by the seed in rng.
VecX skew_t_sample(const SkewTParams& params, Rng& rng, index_t n);

// kappa = E[(|eta| - gamma*eta)^delta], the constant that iterates the
// volatility recursion in expectation. Adaptive quadrature, cached per
// argument tuple. Throws when delta >= nu (the moment does not exist).
double asym_power_moment(double gamma, double delta, const SkewTParams& params);

} // namespace windcast
