#pragma once

#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include "windcast/types.hpp"

namespace windcast {

// p-generalised sine: sin(phi) normalized by the l_{2,p} radius
// (|sin phi|^p + |cos phi|^p)^(1/p). Classical sine at p = 2.
//
// The radius is computed with the larger magnitude factored out, so huge and
// tiny p never overflow the pow.
template <class S>
S sin_p(S phi, S p) {
  if (!(p > S(0))) throw std::invalid_argument("sin_p: p must be positive");
  const S s = std::sin(phi), c = std::cos(phi);
  const S as = std::abs(s), ac = std::abs(c);
  const S hi = as > ac ? as : ac;
  const S lo = as > ac ? ac : as;
  const S radius = hi * std::pow(S(1) + std::pow(lo / hi, p), S(1) / p);
  return s / radius;
}

template <class S>
S cos_p(S phi, S p) {
  if (!(p > S(0))) throw std::invalid_argument("cos_p: p must be positive");
  const S s = std::sin(phi), c = std::cos(phi);
  const S as = std::abs(s), ac = std::abs(c);
  const S hi = as > ac ? as : ac;
  const S lo = as > ac ? ac : as;
  const S radius = hi * std::pow(S(1) + std::pow(lo / hi, p), S(1) / p);
  return c / radius;
}

// Periodic basis family over period s:
//   i = 1        -> constant 1
//   i even       -> cos_p(pi * i * t / s)
//   i odd, i > 1 -> sin_p(pi * (i-1) * t / s)
// so i = 2,3 are the full-period harmonic pair and i = 4,5 the half-period pair.
template <class S>
S basis_function(int i, S s, S t, S p) {
  if (i < 1) throw std::invalid_argument("basis_function: index must be >= 1");
  if (i == 1) return S(1);
  const S pi = S(3.1415926535897932384626433832795);
  if (i % 2 == 0) return cos_p(pi * S(i) * t / s, p);
  return sin_p(pi * S(i - 1) * t / s, p);
}

// Deterministic-mean specification: two periods, an indicator matrix selecting
// active products of the two basis families, one exponent per active
// non-constant basis function, optional linear trend.
//
// indicator(i1-1, i2-1) = 1 activates the product f1_{i1} * f2_{i2}.
// Cell (1,1) is the intercept and must be 0 in the matrix; the intercept
// column is always present.
struct SeasonalSpec {
  double s1 = 52560.0;  // slow period in steps (one year of 10-min data)
  double s2 = 144.0;    // fast period in steps (one day)
  Eigen::MatrixXi indicator;
  std::vector<int> active1, active2;  // function indices >= 2 with a p exponent
  VecX p1, p2;                        // exponents aligned with active1/active2
  bool include_trend = true;
  double t_scale = 1.0;

  static SeasonalSpec make(double s1, double s2, Eigen::MatrixXi indicator,
                           bool include_trend, double t_scale);

  // 5x5 indicator with four diurnal terms, four annual terms and
  // four interactions; all exponents 2.
  static SeasonalSpec default_spec(bool include_trend = true, double t_scale = 1.0);

  int n_seasonal_terms() const { return static_cast<int>(cells().size()); }
  int n_columns() const { return 1 + (include_trend ? 1 : 0) + n_seasonal_terms(); }
  int n_p() const { return static_cast<int>(p1.size() + p2.size()); }

  // Active cells in regressor order: (1,i2) ascending, then (i1,1) ascending,
  // then interactions row-major.
  const std::vector<std::pair<int, int>>& cells() const { return cells_; }

  double p_for1(int i1) const;  // exponent of f1_{i1}, i1 >= 2
  double p_for2(int i2) const;

  // Flattened exponent vector, diurnal family first, for the estimation layer.
  VecX pack_p() const;
  SeasonalSpec with_p(const VecX& packed) const;

  std::vector<std::string> column_labels() const;
  std::vector<std::string> p_labels() const;

 private:
  std::vector<std::pair<int, int>> cells_;
};

// One design row at time index t: intercept, optional trend t/t_scale, then
// the active products.
VecX regressor_row(const SeasonalSpec& spec, double t);

// Rows t0 .. t0+count-1.
MatX design_matrix(const SeasonalSpec& spec, double t0, index_t count);

} // namespace windcast
