#include <CLI11.hpp>

#include <iostream>
#include <sstream>

#include "windcast/calendar.hpp"
#include "windcast/errors.hpp"
#include "windcast/pipeline.hpp"

namespace {

windcast::ModelChoice parse_model(const std::string& s) {
  if (s == "fourier") return windcast::ModelChoice::fourier;
  if (s == "pgen") return windcast::ModelChoice::pgen;
  if (s == "both") return windcast::ModelChoice::both;
  throw windcast::ConfigError("--model must be fourier, pgen or both");
}

windcast::Orders parse_orders(const std::string& s) {
  std::stringstream ss(s);
  int v[4];
  char sep;
  if (!(ss >> v[0] >> sep >> v[1] >> sep >> v[2] >> sep >> v[3]) || !ss.eof())
    throw windcast::ConfigError("--orders expects j,q,Q,P");
  return windcast::Orders{v[0], v[1], v[2], v[3]};
}

} // namespace

int main(int argc, char** argv) {
  using namespace windcast;

  CLI::App app{"wind-speed modeling and forecasting toolkit"};
  app.require_subcommand(1);
  app.fallthrough();

  std::string config_path, data_path, output_dir;
  app.add_option("-c,--config", config_path, "configuration file");
  app.add_option("--data", data_path, "input CSV (overrides data.file)");
  app.add_option("-o,--output", output_dir, "output directory");

  std::string model_str, orders_str, origin_str, spec_path;
  int horizon = 0, bandwidth = 0, top_k = 0, lags = 0;
  long long n_origins = -1, sim_n = 0;
  long long seed = -1, sim_seed = -1;
  double max_period = 0.0;
  bool no_se = false;

  auto* sc_spectrum = app.add_subcommand("spectrum", "periodogram and dominant periods");
  sc_spectrum->add_option("--bandwidth", bandwidth, "smoothing window (odd)");
  sc_spectrum->add_option("--top-k", top_k, "number of peaks to report");
  sc_spectrum->add_option("--max-period", max_period, "ignore longer periods (steps)");

  auto* sc_fit = app.add_subcommand("fit", "estimate the model(s)");
  sc_fit->add_option("--model", model_str, "fourier, pgen or both");
  sc_fit->add_option("--orders", orders_str, "dynamic orders j,q,Q,P");
  sc_fit->add_option("--spec", spec_path, "configuration file with the seasonal layout");
  sc_fit->add_flag("--no-se", no_se, "skip standard errors");

  auto* sc_forecast = app.add_subcommand("forecast", "mean and scale forecasts");
  sc_forecast->add_option("--model", model_str, "fourier, pgen or both");
  sc_forecast->add_option("--origin", origin_str, "forecast origin timestamp");
  sc_forecast->add_option("--horizon", horizon, "steps ahead");

  auto* sc_evaluate = app.add_subcommand("evaluate", "rolling-origin backtest");
  sc_evaluate->add_option("--model", model_str, "fourier, pgen or both");
  sc_evaluate->add_option("--horizon", horizon, "terminal forecast step");
  sc_evaluate->add_option("--n-origins", n_origins, "sampled origins (0 = all)");
  sc_evaluate->add_option("--seed", seed, "origin sampling seed");

  auto* sc_diagnose = app.add_subcommand("diagnose", "residual diagnostics");
  sc_diagnose->add_option("--model", model_str, "fourier, pgen or both");
  sc_diagnose->add_option("--lags", lags, "portmanteau lag count");

  auto* sc_simulate = app.add_subcommand("simulate", "draw a synthetic series");
  sc_simulate->add_option("--n", sim_n, "series length");
  sc_simulate->add_option("--seed", sim_seed, "random seed");

  try {
    app.parse(argc, argv);

    RunConfig cfg;
    if (!spec_path.empty() && config_path.empty()) config_path = spec_path;
    if (!config_path.empty()) cfg = parse_config_file(config_path);
    if (!data_path.empty()) cfg.data_file = data_path;
    if (!output_dir.empty()) cfg.output_dir = output_dir;
    if (!model_str.empty()) cfg.kind = parse_model(model_str);
    if (!orders_str.empty()) cfg.orders = parse_orders(orders_str);
    if (no_se) cfg.standard_errors = false;
    if (!origin_str.empty()) {
      try {
        cfg.forecast_origin = parse_iso8601(origin_str);
      } catch (const std::exception& e) {
        throw ConfigError(std::string("--origin: ") + e.what());
      }
    }

    std::vector<Stage> stages;
    if (app.got_subcommand(sc_spectrum)) {
      if (bandwidth > 0) cfg.spectrum_bandwidth = bandwidth;
      if (top_k > 0) cfg.spectrum_top_k = top_k;
      if (max_period > 0.0) cfg.spectrum_max_period = max_period;
      stages = {Stage::spectrum};
    } else if (app.got_subcommand(sc_fit)) {
      stages = {Stage::fit};
    } else if (app.got_subcommand(sc_forecast)) {
      if (horizon > 0) cfg.forecast_horizon = horizon;
      stages = {Stage::forecast};
    } else if (app.got_subcommand(sc_evaluate)) {
      if (horizon > 0) cfg.bt_horizon = horizon;
      if (n_origins >= 0) cfg.bt_n_origins = n_origins;
      if (seed >= 0) cfg.bt_seed = static_cast<uint64_t>(seed);
      stages = {Stage::evaluate};
    } else if (app.got_subcommand(sc_diagnose)) {
      if (lags > 0) cfg.diagnose_lags = lags;
      stages = {Stage::diagnose};
    } else if (app.got_subcommand(sc_simulate)) {
      if (sim_n > 0) cfg.sim.n = sim_n;
      if (sim_seed >= 0) cfg.sim.seed = static_cast<uint64_t>(sim_seed);
      stages = {Stage::simulate};
    }

    run_pipeline(cfg, stages);
    return 0;
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 1;
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 1;
  } catch (const std::invalid_argument& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 1;
  } catch (const DataError& e) {
    std::cerr << "data error: " << e.what() << "\n";
    return 2;
  } catch (const ConvergenceError& e) {
    std::cerr << "convergence error: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 4;
  }
}
