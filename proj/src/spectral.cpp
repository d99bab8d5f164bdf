#include "windcast/spectral.hpp"

#include <unsupported/Eigen/FFT>

#include <algorithm>
#include <complex>

#include "windcast/errors.hpp"

namespace windcast {

namespace {
constexpr double kPi = 3.1415926535897932384626433832795;
}

Periodogram periodogram(const VecX& series) {
  const index_t n = series.size();
  if (n < 16) throw DataError("periodogram: need at least 16 points");
  VecX x = series.array() - series.mean();
  if (x.cwiseAbs().maxCoeff() == 0.0)
    throw DataError("periodogram: series is constant, spectrum undefined");

  index_t nfft = 1;
  while (nfft < n) nfft *= 2;
  std::vector<double> padded(static_cast<size_t>(nfft), 0.0);
  for (index_t i = 0; i < n; ++i) padded[static_cast<size_t>(i)] = x[i];

  Eigen::FFT<double> fft;
  std::vector<std::complex<double>> spec;
  fft.fwd(spec, padded);

  const index_t half = nfft / 2;
  Periodogram pg;
  pg.frequencies.resize(half);
  pg.power.resize(half);
  for (index_t k = 1; k <= half; ++k) {
    const double mag2 = std::norm(spec[static_cast<size_t>(k)]);
    pg.frequencies[k - 1] = static_cast<double>(k) / static_cast<double>(nfft);
    // One-sided fold: interior bins carry both conjugate halves.
    pg.power[k - 1] = k == half ? mag2 / (2.0 * kPi * static_cast<double>(n))
                                : mag2 / (kPi * static_cast<double>(n));
  }
  return pg;
}

Periodogram smooth(const Periodogram& pg, int bandwidth) {
  if (bandwidth < 1 || bandwidth % 2 == 0)
    throw ConfigError("smooth: bandwidth must be odd and >= 1");
  const index_t m = pg.power.size();
  if (bandwidth >= m)
    throw ConfigError("smooth: bandwidth must be below the bin count");
  const index_t h = bandwidth / 2;
  Periodogram out;
  out.frequencies = pg.frequencies;
  out.power.resize(m);
  for (index_t i = 0; i < m; ++i) {
    const index_t lo = std::max<index_t>(0, i - h);
    const index_t hi = std::min<index_t>(m - 1, i + h);
    out.power[i] = pg.power.segment(lo, hi - lo + 1).mean();
  }
  return out;
}

PeriodSet detect_peaks(const Periodogram& pg, double max_period, int top_k) {
  if (top_k < 1) throw std::invalid_argument("detect_peaks: top_k must be >= 1");
  const index_t m = pg.power.size();
  PeriodSet set;
  // Ties are collapsed into runs so a smoothed spectral line (a flat-topped
  // plateau of equal bins) still counts as one peak at its middle bin.
  for (index_t i = 0; i < m;) {
    index_t j = i;
    while (j + 1 < m && pg.power[j + 1] == pg.power[i]) ++j;
    const bool up = i == 0 || pg.power[i] > pg.power[i - 1];
    const bool down = j == m - 1 || pg.power[j] > pg.power[j + 1];
    if (up && down) {
      const index_t mid = (i + j) / 2;
      const double period = 1.0 / pg.frequencies[mid];
      if (period <= max_period) set.peaks.push_back({period, pg.power[mid]});
    }
    i = j + 1;
  }
  std::stable_sort(set.peaks.begin(), set.peaks.end(),
                   [](const Peak& a, const Peak& b) { return a.power > b.power; });
  if (set.peaks.size() > static_cast<size_t>(top_k)) set.peaks.resize(static_cast<size_t>(top_k));
  return set;
}

} // namespace windcast
