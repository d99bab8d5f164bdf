#pragma once

#include <string>
#include <vector>

#include "windcast/diagnostics.hpp"
#include "windcast/estimation.hpp"
#include "windcast/evaluation.hpp"
#include "windcast/model.hpp"
#include "windcast/spectral.hpp"

namespace windcast {

// Fit results round-trip through JSON without the residual paths; callers
// rebuild paths from the data when they need them (residual_paths).
void write_fit_json(const FitResult& fit, const std::string& path);
FitResult read_fit_json(const std::string& path);

void write_significance_csv(const std::vector<SignificanceRow>& rows,
                            const std::string& path);

// step, mean, scale_delta (E[sigma^delta]) and scale (its 1/delta power).
void write_forecast_csv(const VecX& mean, const VecX& scale_delta, double delta,
                        const std::string& path);

// frequency, raw power, smoothed power (columns aligned by bin).
void write_spectrum_csv(const Periodogram& raw, const Periodogram& smoothed,
                        const std::string& path);
void write_peaks_csv(const PeriodSet& peaks, const std::string& path);

// lag, acf of eta, acf of |eta|^delta, confidence band.
void write_acf_csv(const AcfResult& eta, const AcfResult& abs_eta,
                   const std::string& path);
void write_histogram_csv(const HistogramDensity& hist, const std::string& path);
void write_ljung_box_csv(const std::vector<std::pair<std::string, LjungBoxResult>>& rows,
                         const std::string& path);

// Monthly table: one row per model and metric, months as columns plus a
// pooled total column.
void write_eval_csv(const EvalReport& report, const std::string& path);
void write_eval_json(const EvalReport& report, const std::string& path);

} // namespace windcast
