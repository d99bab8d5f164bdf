#pragma once

#include <cmath>
#include <functional>
#include <stdexcept>

namespace windcast {

namespace detail {

inline double simpson(double a, double b, double fa, double fm, double fb) {
  return (b - a) / 6.0 * (fa + 4.0 * fm + fb);
}

template <class F>
double adaptive_simpson_rec(F&& f, double a, double b, double fa, double fm, double fb,
                            double whole, double tol, int depth) {
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
  const double flm = f(lm), frm = f(rm);
  const double left = simpson(a, m, fa, flm, fm);
  const double right = simpson(m, b, fm, frm, fb);
  const double delta = left + right - whole;
  if (depth <= 0 || std::abs(delta) <= 15.0 * tol)
    return left + right + delta / 15.0;
  return adaptive_simpson_rec(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1)
       + adaptive_simpson_rec(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

} // namespace detail

// Adaptive Simpson quadrature on [a, b]. tol is an absolute target; the
// Richardson correction term usually leaves a couple of extra digits.
//
// The interval is cut into equal panels before the adaptive recursion so a
// narrow peak in a long domain cannot slip between the three seed points and
// fake an identically-zero integrand.
template <class F>
double integrate(F&& f, double a, double b, double tol = 1e-10, int max_depth = 60) {
  if (!(a < b)) {
    if (a == b) return 0.0;
    throw std::invalid_argument("integrate: a must be below b");
  }
  const int panels = 24;
  const double w = (b - a) / panels;
  const double panel_tol = tol / panels;
  double total = 0.0;
  double lo = a, flo = f(a);
  for (int i = 0; i < panels; ++i) {
    const double hi = (i == panels - 1) ? b : a + (i + 1) * w;
    const double m = 0.5 * (lo + hi);
    const double fm = f(m), fhi = f(hi);
    const double whole = detail::simpson(lo, hi, flo, fm, fhi);
    total += detail::adaptive_simpson_rec(f, lo, hi, flo, fm, fhi, whole, panel_tol, max_depth);
    lo = hi;
    flo = fhi;
  }
  return total;
}

// Integral of f over [0, inf) for integrands with power-law or faster decay.
// Substitutes x = e^s - 1 so the algebraic tail becomes exponential in s; the
// upper cut S keeps the discarded mass far below tol when f(x) = O(x^{-1-margin}).
template <class F>
double integrate_halfline(F&& f, double tol = 1e-10, double decay_margin = 1.0) {
  const double S = std::min(400.0, std::max(60.0, 50.0 / std::max(0.05, decay_margin)));
  auto g = [&f](double s) {
    const double es = std::exp(s);
    return f(es - 1.0) * es;
  };
  return integrate(g, 0.0, S, tol);
}

// Integral of f over the whole real line, split at zero (kinks live there).
template <class F>
double integrate_real_line(F&& f, double tol = 1e-10, double decay_margin = 1.0) {
  auto fneg = [&f](double x) { return f(-x); };
  return integrate_halfline(f, 0.5 * tol, decay_margin)
       + integrate_halfline(fneg, 0.5 * tol, decay_margin);
}

} // namespace windcast
