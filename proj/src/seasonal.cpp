#include "windcast/seasonal.hpp"

#include <algorithm>

namespace windcast {

SeasonalSpec SeasonalSpec::make(double s1, double s2, Eigen::MatrixXi indicator,
                                bool include_trend, double t_scale) {
  if (!(s1 > s2 && s2 > 1.0))
    throw std::invalid_argument("SeasonalSpec: need s1 > s2 > 1");
  if (indicator.rows() < 1 || indicator.cols() < 1)
    throw std::invalid_argument("SeasonalSpec: empty indicator");
  if (indicator(0, 0) != 0)
    throw std::invalid_argument("SeasonalSpec: cell (1,1) is the intercept, set it to 0");
  if (!(t_scale > 0.0))
    throw std::invalid_argument("SeasonalSpec: t_scale must be positive");
  for (index_t r = 0; r < indicator.rows(); ++r)
    for (index_t c = 0; c < indicator.cols(); ++c)
      if (indicator(r, c) != 0 && indicator(r, c) != 1)
        throw std::invalid_argument("SeasonalSpec: indicator entries must be 0 or 1");

  SeasonalSpec sp;
  sp.s1 = s1;
  sp.s2 = s2;
  sp.indicator = std::move(indicator);
  sp.include_trend = include_trend;
  sp.t_scale = t_scale;

  const auto& ind = sp.indicator;
  // Regressor order: fast-family marginals, slow-family marginals, interactions.
  for (index_t c = 1; c < ind.cols(); ++c)
    if (ind(0, c)) sp.cells_.emplace_back(1, static_cast<int>(c) + 1);
  for (index_t r = 1; r < ind.rows(); ++r)
    if (ind(r, 0)) sp.cells_.emplace_back(static_cast<int>(r) + 1, 1);
  for (index_t r = 1; r < ind.rows(); ++r)
    for (index_t c = 1; c < ind.cols(); ++c)
      if (ind(r, c)) sp.cells_.emplace_back(static_cast<int>(r) + 1, static_cast<int>(c) + 1);

  for (const auto& [i1, i2] : sp.cells_) {
    if (i1 >= 2 && std::find(sp.active1.begin(), sp.active1.end(), i1) == sp.active1.end())
      sp.active1.push_back(i1);
    if (i2 >= 2 && std::find(sp.active2.begin(), sp.active2.end(), i2) == sp.active2.end())
      sp.active2.push_back(i2);
  }
  std::sort(sp.active1.begin(), sp.active1.end());
  std::sort(sp.active2.begin(), sp.active2.end());
  sp.p1 = VecX::Constant(static_cast<index_t>(sp.active1.size()), 2.0);
  sp.p2 = VecX::Constant(static_cast<index_t>(sp.active2.size()), 2.0);
  return sp;
}

SeasonalSpec SeasonalSpec::default_spec(bool include_trend, double t_scale) {
  Eigen::MatrixXi ind(5, 5);
  ind << 0, 1, 1, 1, 1,
         1, 1, 1, 0, 0,
         1, 1, 1, 0, 0,
         1, 0, 0, 0, 0,
         1, 0, 0, 0, 0;
  return make(52560.0, 144.0, std::move(ind), include_trend, t_scale);
}

double SeasonalSpec::p_for1(int i1) const {
  const auto it = std::find(active1.begin(), active1.end(), i1);
  if (it == active1.end()) throw std::invalid_argument("p_for1: inactive index");
  return p1[it - active1.begin()];
}

double SeasonalSpec::p_for2(int i2) const {
  const auto it = std::find(active2.begin(), active2.end(), i2);
  if (it == active2.end()) throw std::invalid_argument("p_for2: inactive index");
  return p2[it - active2.begin()];
}

VecX SeasonalSpec::pack_p() const {
  VecX out(n_p());
  out << p2, p1;
  return out;
}

SeasonalSpec SeasonalSpec::with_p(const VecX& packed) const {
  if (packed.size() != n_p())
    throw std::invalid_argument("with_p: exponent count mismatch");
  for (index_t i = 0; i < packed.size(); ++i)
    if (!(packed[i] > 0.0))
      throw std::invalid_argument("with_p: exponents must be positive");
  SeasonalSpec out = *this;
  out.p2 = packed.head(p2.size());
  out.p1 = packed.tail(p1.size());
  return out;
}

std::vector<std::string> SeasonalSpec::column_labels() const {
  std::vector<std::string> labels;
  labels.push_back("theta_11");
  if (include_trend) labels.push_back("trend");
  for (const auto& [i1, i2] : cells_)
    labels.push_back("theta_" + std::to_string(i1) + std::to_string(i2));
  return labels;
}

std::vector<std::string> SeasonalSpec::p_labels() const {
  std::vector<std::string> labels;
  for (int i2 : active2) labels.push_back("p_1" + std::to_string(i2));
  for (int i1 : active1) labels.push_back("p_" + std::to_string(i1) + "1");
  return labels;
}

VecX regressor_row(const SeasonalSpec& spec, double t) {
  VecX row(spec.n_columns());
  index_t k = 0;
  row[k++] = 1.0;
  if (spec.include_trend) row[k++] = t / spec.t_scale;
  for (const auto& [i1, i2] : spec.cells()) {
    const double f1 = i1 == 1 ? 1.0 : basis_function(i1, spec.s1, t, spec.p_for1(i1));
    const double f2 = i2 == 1 ? 1.0 : basis_function(i2, spec.s2, t, spec.p_for2(i2));
    row[k++] = f1 * f2;
  }
  return row;
}

MatX design_matrix(const SeasonalSpec& spec, double t0, index_t count) {
  if (count < 1) throw std::invalid_argument("design_matrix: empty range");
  MatX X(count, spec.n_columns());
  // Columnar fill: one pass per marginal function, then cheap products.
  X.col(0).setOnes();
  index_t k = 1;
  if (spec.include_trend) {
    for (index_t r = 0; r < count; ++r) X(r, k) = (t0 + static_cast<double>(r)) / spec.t_scale;
    ++k;
  }
  std::vector<VecX> f1(spec.indicator.rows() + 2), f2(spec.indicator.cols() + 2);
  auto marginal = [&](int i, double s, double p) {
    VecX v(count);
    for (index_t r = 0; r < count; ++r)
      v[r] = basis_function(i, s, t0 + static_cast<double>(r), p);
    return v;
  };
  for (int i1 : spec.active1) f1[i1] = marginal(i1, spec.s1, spec.p_for1(i1));
  for (int i2 : spec.active2) f2[i2] = marginal(i2, spec.s2, spec.p_for2(i2));
  for (const auto& [i1, i2] : spec.cells()) {
    if (i1 == 1)
      X.col(k) = f2[i2];
    else if (i2 == 1)
      X.col(k) = f1[i1];
    else
      X.col(k) = f1[i1].cwiseProduct(f2[i2]);
    ++k;
  }
  return X;
}

} // namespace windcast
