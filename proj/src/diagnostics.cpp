#include "windcast/diagnostics.hpp"

#include <algorithm>
#include <cmath>

#include "windcast/errors.hpp"
#include "windcast/special.hpp"

namespace windcast {

AcfResult acf(const VecX& x, int max_lag) {
  const index_t n = x.size();
  if (max_lag < 1 || max_lag >= n)
    throw std::invalid_argument("acf: need 1 <= max_lag < n");
  const double mean = x.mean();
  const VecX c = x.array() - mean;
  const double denom = c.squaredNorm();
  if (denom <= 0.0) throw DataError("acf: constant series");
  AcfResult out;
  out.values.resize(max_lag + 1);
  out.values[0] = 1.0;
  for (index_t k = 1; k <= max_lag; ++k)
    out.values[k] = c.tail(n - k).dot(c.head(n - k)) / denom;
  out.band = 1.96 / std::sqrt(static_cast<double>(n));
  return out;
}

LjungBoxResult ljung_box(const VecX& x, int lags, int n_fitted_params) {
  const index_t n = x.size();
  if (n_fitted_params < 0)
    throw std::invalid_argument("ljung_box: negative fitted-parameter count");
  if (lags <= n_fitted_params)
    throw std::invalid_argument("ljung_box: lags must exceed the fitted-parameter count");
  if (lags >= n)
    throw std::invalid_argument("ljung_box: lags must be below the sample size");
  const AcfResult a = acf(x, lags);
  double q = 0.0;
  for (int k = 1; k <= lags; ++k)
    q += a.values[k] * a.values[k] / static_cast<double>(n - k);
  q *= static_cast<double>(n) * (static_cast<double>(n) + 2.0);
  LjungBoxResult out;
  out.statistic = q;
  out.lags = lags;
  out.df = lags - n_fitted_params;
  out.p_value = chi_square_sf(q, static_cast<double>(out.df));
  return out;
}

namespace {

double quantile_sorted(const VecX& s, double q) {
  const index_t n = s.size();
  const double pos = q * static_cast<double>(n - 1);
  const index_t lo = static_cast<index_t>(std::floor(pos));
  if (lo + 1 >= n) return s[n - 1];
  const double frac = pos - static_cast<double>(lo);
  return s[lo] + frac * (s[lo + 1] - s[lo]);
}

} // namespace

ResidualSummary residual_summary(const FitResult& fit, const VecX& w) {
  const index_t n = w.size();
  if (fit.z.size() != n || fit.eta.size() != n)
    throw std::invalid_argument("residual_summary: fit paths do not match the series");
  if (n < 2) throw std::invalid_argument("residual_summary: series too short");

  ResidualSummary out;
  out.mse = fit.z.squaredNorm() / static_cast<double>(n);
  const double wmean = w.mean();
  const double wvar = (w.array() - wmean).matrix().squaredNorm() / static_cast<double>(n);
  if (wvar <= 0.0) throw DataError("residual_summary: constant series");
  out.r_squared = 1.0 - out.mse / wvar;

  VecX s = fit.eta;
  std::sort(s.data(), s.data() + n);
  const double span = s[n - 1] - s[0];
  const double iqr = quantile_sorted(s, 0.75) - quantile_sorted(s, 0.25);
  const double n3 = std::cbrt(static_cast<double>(n));
  double width = 2.0 * iqr / n3;
  if (!(width > 0.0)) {
    const double sd = std::sqrt(
        (s.array() - s.mean()).matrix().squaredNorm() / static_cast<double>(n));
    width = 3.49 * sd / n3;
  }
  index_t bins;
  if (!(width > 0.0) || span <= 0.0) {
    bins = 1;
  } else {
    bins = static_cast<index_t>(std::ceil(span / width));
    bins = std::clamp<index_t>(bins, 1, 10000);
  }
  const double lo = s[0], hi = span > 0.0 ? s[n - 1] : s[0] + 1.0;
  const double bw = (hi - lo) / static_cast<double>(bins);

  HistogramDensity& h = out.histogram;
  h.edges.resize(bins + 1);
  for (index_t b = 0; b <= bins; ++b) h.edges[b] = lo + bw * static_cast<double>(b);
  h.centers.resize(bins);
  for (index_t b = 0; b < bins; ++b) h.centers[b] = lo + bw * (static_cast<double>(b) + 0.5);
  VecX counts = VecX::Zero(bins);
  for (index_t i = 0; i < n; ++i) {
    index_t b = static_cast<index_t>((s[i] - lo) / bw);
    if (b >= bins) b = bins - 1;  // right edge of the last bin is inclusive
    counts[b] += 1.0;
  }
  h.density = counts / (static_cast<double>(n) * bw);
  h.fitted = skew_t_logpdf(h.centers.array(), fit.params.skewt).exp().matrix();
  return out;
}

} // namespace windcast
