#pragma once

#include <vector>

#include "windcast/types.hpp"

namespace windcast {

struct Periodogram {
  VecX frequencies;  // cycles per step, strictly increasing in (0, 0.5]
  VecX power;
};

struct Peak {
  double period;  // steps
  double power;
};

// Peaks ordered by power, strongest first. In the intended usage (wind
// spectra dominated by the slow cycle) this order coincides with decreasing
// period; the container itself does not force that.
struct PeriodSet {
  std::vector<Peak> peaks;

  VecX periods() const {
    VecX out(static_cast<index_t>(peaks.size()));
    for (size_t i = 0; i < peaks.size(); ++i) out[static_cast<index_t>(i)] = peaks[i].period;
    return out;
  }
};

// Raw periodogram at Fourier frequencies k/N, k = 1..N/2. The mean is removed
// here; non-power-of-two lengths are zero-padded to the next power of two.
// Normalization is one-sided: summing power * (2*pi/n) over all bins returns
// the biased sample variance exactly when n is a power of two.
// Throws DataError for length < 16 or a constant series.
Periodogram periodogram(const VecX& series);

// Daniell (moving-average) smoothing with an odd window; edge windows shrink
// to the available bins. bandwidth 1 is the identity.
Periodogram smooth(const Periodogram& pg, int bandwidth);

// Up to top_k local maxima with period <= max_period, strongest first.
PeriodSet detect_peaks(const Periodogram& pg, double max_period, int top_k);

} // namespace windcast
