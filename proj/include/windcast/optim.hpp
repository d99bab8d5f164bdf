#pragma once

#include <functional>

#include "windcast/types.hpp"

namespace windcast {

using Objective = std::function<double(const VecX&)>;

struct OptimOptions {
  int max_iterations = 2000;
  double rel_f_tol = 1e-8;    // stop when |f_new - f_old| / max(1,|f_new|) drops below
  double grad_tol = 1e-5;     // early stop on small gradient (inf norm)
  double fd_step = 1e-7;      // forward-difference step, scaled by max(1,|x_i|)
  int max_line_halvings = 45;
};

struct OptimResult {
  VecX x;
  double f = 0.0;
  VecX grad;
  int iterations = 0;
  bool converged = false;
};

// Forward-difference gradient; f_x is f(x), saving one evaluation.
VecX fd_gradient(const Objective& f, const VecX& x, double f_x, double step);

// Central-difference gradient, used where extra accuracy is worth 2k evals.
VecX fd_gradient_central(const Objective& f, const VecX& x, double step);

// Quasi-Newton minimization with an inverse-Hessian BFGS update, Armijo
// backtracking and curvature-guarded updates. The objective may return +inf
// (or NaN) to reject a point; the line search backs away from such points.
OptimResult minimize_bfgs(const Objective& f, VecX x0, const OptimOptions& opts = {});

// Brent's method on [lo, hi] (golden section with parabolic steps).
double minimize_scalar(const std::function<double(double)>& f, double lo, double hi,
                       double tol = 1e-8, int max_iter = 200);

// Central-difference Hessian with a fixed absolute step.
MatX fd_hessian(const Objective& f, const VecX& x, double step = 1e-4);

} // namespace windcast
