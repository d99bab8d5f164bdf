#include "windcast/optim.hpp"

#include <cmath>
#include <limits>

namespace windcast {

VecX fd_gradient(const Objective& f, const VecX& x, double f_x, double step) {
  const index_t n = x.size();
  VecX g(n);
  VecX xp = x;
  for (index_t i = 0; i < n; ++i) {
    const double h = step * std::max(1.0, std::abs(x[i]));
    xp[i] = x[i] + h;
    g[i] = (f(xp) - f_x) / h;
    xp[i] = x[i];
  }
  return g;
}

VecX fd_gradient_central(const Objective& f, const VecX& x, double step) {
  const index_t n = x.size();
  VecX g(n);
  VecX xp = x;
  for (index_t i = 0; i < n; ++i) {
    const double h = step * std::max(1.0, std::abs(x[i]));
    xp[i] = x[i] + h;
    const double fp = f(xp);
    xp[i] = x[i] - h;
    const double fm = f(xp);
    xp[i] = x[i];
    g[i] = (fp - fm) / (2.0 * h);
  }
  return g;
}

OptimResult minimize_bfgs(const Objective& f, VecX x0, const OptimOptions& opts) {
  const index_t n = x0.size();
  constexpr double inf = std::numeric_limits<double>::infinity();

  OptimResult res;
  res.x = std::move(x0);
  res.f = f(res.x);
  if (!std::isfinite(res.f)) {
    // Caller handed us a rejected start; nothing sensible to do.
    res.grad = VecX::Zero(n);
    return res;
  }
  res.grad = fd_gradient(f, res.x, res.f, opts.fd_step);

  MatX H = MatX::Identity(n, n);
  bool fresh_reset = true;

  for (res.iterations = 1; res.iterations <= opts.max_iterations; ++res.iterations) {
    if (res.grad.cwiseAbs().maxCoeff() < opts.grad_tol) {
      res.converged = true;
      break;
    }

    VecX dir = -(H * res.grad);
    double slope = dir.dot(res.grad);
    if (!(slope < 0.0)) {  // numerical breakdown of H
      H.setIdentity();
      dir = -res.grad;
      slope = dir.dot(res.grad);
      fresh_reset = true;
    }

    // Armijo backtracking; +inf trial points simply halve the step.
    double t = 1.0;
    double f_new = inf;
    VecX x_new;
    bool ok = false;
    for (int ls = 0; ls < opts.max_line_halvings; ++ls) {
      x_new = res.x + t * dir;
      f_new = f(x_new);
      if (std::isfinite(f_new) && f_new <= res.f + 1e-4 * t * slope) {
        ok = true;
        break;
      }
      t *= 0.5;
    }
    if (!ok) {
      if (!fresh_reset) {
        // Retry once from a steepest-descent reset before giving up.
        H.setIdentity();
        fresh_reset = true;
        continue;
      }
      // No descent along the gradient itself: numerically stationary.
      res.converged = res.grad.cwiseAbs().maxCoeff() < 1e3 * opts.grad_tol;
      break;
    }

    const VecX g_new = fd_gradient(f, x_new, f_new, opts.fd_step);
    const VecX s = x_new - res.x;
    const VecX y = g_new - res.grad;
    const double sy = s.dot(y);
    if (sy > 1e-10 * s.norm() * y.norm()) {
      const double rho = 1.0 / sy;
      const MatX I = MatX::Identity(n, n);
      H = (I - rho * s * y.transpose()) * H * (I - rho * y * s.transpose())
        + rho * s * s.transpose();
      fresh_reset = false;
    }

    const double rel_change = std::abs(res.f - f_new) / std::max(1.0, std::abs(f_new));
    res.x = std::move(x_new);
    res.f = f_new;
    res.grad = g_new;
    if (rel_change < opts.rel_f_tol) {
      res.converged = true;
      break;
    }
  }
  if (res.iterations > opts.max_iterations) res.iterations = opts.max_iterations;
  return res;
}

double minimize_scalar(const std::function<double(double)>& f, double lo, double hi,
                       double tol, int max_iter) {
  const double gold = 0.3819660112501051;  // 2 - golden ratio
  double a = lo, b = hi;
  double x = a + gold * (b - a), w = x, v = x;
  double fx = f(x), fw = fx, fv = fx;
  double d = 0.0, e = 0.0;

  for (int iter = 0; iter < max_iter; ++iter) {
    const double m = 0.5 * (a + b);
    const double tol1 = tol * std::abs(x) + 1e-12;
    const double tol2 = 2.0 * tol1;
    if (std::abs(x - m) <= tol2 - 0.5 * (b - a)) break;

    bool use_golden = true;
    if (std::abs(e) > tol1) {
      // Parabola through x, v, w.
      const double r = (x - w) * (fx - fv);
      double q = (x - v) * (fx - fw);
      double p = (x - v) * q - (x - w) * r;
      q = 2.0 * (q - r);
      if (q > 0.0) p = -p;
      q = std::abs(q);
      const double e_old = e;
      e = d;
      if (std::abs(p) < std::abs(0.5 * q * e_old) && p > q * (a - x) && p < q * (b - x)) {
        d = p / q;
        const double u = x + d;
        if (u - a < tol2 || b - u < tol2) d = x < m ? tol1 : -tol1;
        use_golden = false;
      }
    }
    if (use_golden) {
      e = (x < m ? b : a) - x;
      d = gold * e;
    }
    const double u = x + (std::abs(d) >= tol1 ? d : (d > 0 ? tol1 : -tol1));
    const double fu = f(u);
    if (fu <= fx) {
      if (u < x) b = x; else a = x;
      v = w; fv = fw;
      w = x; fw = fx;
      x = u; fx = fu;
    } else {
      if (u < x) a = u; else b = u;
      if (fu <= fw || w == x) {
        v = w; fv = fw;
        w = u; fw = fu;
      } else if (fu <= fv || v == x || v == w) {
        v = u; fv = fu;
      }
    }
  }
  return x;
}

MatX fd_hessian(const Objective& f, const VecX& x, double step) {
  const index_t n = x.size();
  MatX H(n, n);
  VecX xp = x;
  const double f0 = f(x);
  VecX fplus(n), fminus(n);
  for (index_t i = 0; i < n; ++i) {
    xp[i] = x[i] + step;
    fplus[i] = f(xp);
    xp[i] = x[i] - step;
    fminus[i] = f(xp);
    xp[i] = x[i];
  }
  for (index_t i = 0; i < n; ++i)
    H(i, i) = (fplus[i] - 2.0 * f0 + fminus[i]) / (step * step);
  for (index_t i = 0; i < n; ++i) {
    for (index_t j = i + 1; j < n; ++j) {
      xp[i] = x[i] + step; xp[j] = x[j] + step;
      const double fpp = f(xp);
      xp[j] = x[j] - step;
      const double fpm = f(xp);
      xp[i] = x[i] - step; xp[j] = x[j] + step;
      const double fmp = f(xp);
      xp[j] = x[j] - step;
      const double fmm = f(xp);
      xp[i] = x[i]; xp[j] = x[j];
      H(i, j) = H(j, i) = (fpp - fpm - fmp + fmm) / (4.0 * step * step);
    }
  }
  return H;
}

} // namespace windcast
