#pragma once

#include <optional>
#include <string>
#include <vector>

#include "windcast/evaluation.hpp"
#include "windcast/model.hpp"
#include "windcast/series.hpp"
#include "windcast/types.hpp"

namespace windcast {

enum class ModelChoice { fourier, pgen, both };

// Parameters of a synthetic data run, straight from the config file.
struct SimulateConfig {
  index_t n = 60000;
  uint64_t seed = 42;
  utc_seconds start = 1185926400;  // 2007-08-01T00:00Z
  bool clip = true;
  bool has_theta = false;
  VecX theta, p, ar, ma, alpha, gamma, beta;
  double d = 0.0, alpha0 = 0.05, delta = 2.0, xi = 1.0, nu = 8.0;

  ModelParams make_params(int truncation) const;
};

// Everything a run needs, parsed from a flat "section.key = value" file.
// Section prefixes: data, split, seasonal, model, forecast, backtest, power,
// spectrum, diagnose, output, simulate.
struct RunConfig {
  // data
  std::string data_file;
  CsvFormat csv;
  int max_gap_steps = 36;
  std::optional<utc_seconds> boundary;

  // seasonal mean structure
  double s1 = 52560.0;
  double s2 = 144.0;
  std::optional<Eigen::MatrixXi> indicator;  // default: the 12-term layout
  bool trend = true;
  double t_scale = 0.0;  // 0 = series length at run time
  std::optional<VecX> seasonal_p;

  // model
  ModelChoice kind = ModelChoice::both;
  Orders orders{2, 1, 1, 2};
  int truncation = 1000;
  int max_iterations = 2000;
  bool standard_errors = true;

  // forecast
  std::optional<utc_seconds> forecast_origin;
  int forecast_horizon = 18;
  int max_horizon = 144;

  // backtest
  int bt_horizon = 18;
  index_t bt_n_origins = 5000;
  uint64_t bt_seed = 1;
  std::vector<double> taus{0.25, 0.5, 0.75};
  index_t bt_max_window = 220000;

  // turbine
  PowerCurve curve = PowerCurve::fuhrlaender_md77();

  // spectrum / diagnostics
  int spectrum_bandwidth = 11;
  int spectrum_top_k = 6;
  double spectrum_max_period = 1e15;
  int diagnose_lags = 20;
  int diagnose_acf_lags = 144;

  std::string output_dir = ".";

  SimulateConfig sim;

  // Builds the seasonal structure, resolving t_scale = 0 to series_length.
  SeasonalSpec seasonal_spec(double series_length) const;
};

RunConfig parse_config_text(const std::string& text);
RunConfig parse_config_file(const std::string& path);

} // namespace windcast
