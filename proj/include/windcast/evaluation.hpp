#pragma once

#include <array>
#include <functional>
#include <string>
#include <vector>

#include "windcast/series.hpp"
#include "windcast/types.hpp"

namespace windcast {

// Piecewise turbine curve in kW: zero below cut-in, cubic ramp up to rated
// speed, plateau at rated power, zero at and beyond cut-out.
struct PowerCurve {
  double cut_in = 3.0;
  double rated_speed = 13.0;
  double cut_out = 20.0;
  double rated_power = 1500.0;  // kW
  double air_density = 1.25;    // kg/m^3
  double rotor_area = 4656.63;  // m^2
  double cp = 0.0;              // calibrated so the ramp meets rated power

  static PowerCurve make(double cut_in, double rated_speed, double cut_out,
                         double rated_power, double air_density,
                         double rotor_area);
  static PowerCurve fuhrlaender_md77();  // 1.5 MW, 3 / 13 / 20 m/s
  static PowerCurve ge_1_6mw();          // 1.6 MW, 3.5 / 12 / 25 m/s
};

double power_output(double speed, const PowerCurve& curve);

// Asymmetric economic loss in power units. Under-forecasts (actual speed
// above forecast) are charged tau times the power shortfall; over-forecasts
// carry weight 1-tau. No clamping: across cut-out the charged difference can
// be negative, which is the intended bookkeeping for a stopped turbine.
double pce_loss(double actual_speed, double forecast_speed, double tau,
                const PowerCurve& curve);

double rmse(const VecX& actual, const VecX& forecast);
double mae(const VecX& actual, const VecX& forecast);

// One entrant in the backtest: maps a forecast origin (global series index)
// to the terminal-step speed forecast issued there.
struct ForecastModel {
  std::string name;
  std::function<double(index_t origin)> forecast;
};

struct BacktestSettings {
  int horizon = 18;
  index_t n_origins = 5000;  // 0 = every valid origin exactly once, in order
  uint64_t seed = 1;
  std::vector<double> taus{0.25, 0.5, 0.75};
};

struct MetricCell {
  double rmse = 0.0;
  double mae = 0.0;
  std::vector<double> pce;  // aligned with the tau list
  index_t count = 0;
};

// Months are bucketed by the target timestamp (origin + horizon steps);
// bucket 12 pools every scored origin.
struct EvalReport {
  std::vector<std::string> models;
  std::vector<double> taus;
  int horizon = 0;
  uint64_t seed = 0;
  index_t origins = 0;
  std::vector<std::array<MetricCell, 13>> cells;  // [model][month 0..11, 12=all]
};

// Seeded rolling-origin comparison. Origins are drawn uniformly with
// replacement from the valid out-of-sample range (or enumerated when
// n_origins = 0); every model sees the same origins, accumulation runs in a
// fixed order with compensated summation, so a seed pins the report exactly.
EvalReport rolling_backtest(const WindSeries& series, const SampleSplit& split,
                            const std::vector<ForecastModel>& models,
                            const PowerCurve& curve,
                            const BacktestSettings& settings);

} // namespace windcast
