#include "windcast/pipeline.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iostream>

#include "windcast/diagnostics.hpp"
#include "windcast/errors.hpp"
#include "windcast/estimation.hpp"
#include "windcast/evaluation.hpp"
#include "windcast/forecast.hpp"
#include "windcast/io.hpp"
#include "windcast/simulate.hpp"
#include "windcast/spectral.hpp"

namespace windcast {

namespace {

namespace fs = std::filesystem;

struct Context {
  const RunConfig& cfg;
  fs::path out;
  WindSeries series;
  SampleSplit split;
  SeasonalSpec spec;
  std::vector<FitResult> fits;
};

std::vector<ModelKind> kinds_of(ModelChoice c) {
  if (c == ModelChoice::fourier) return {ModelKind::fourier};
  if (c == ModelChoice::pgen) return {ModelKind::pgen};
  return {ModelKind::fourier, ModelKind::pgen};
}

std::string path_of(const Context& ctx, const std::string& name) {
  return (ctx.out / name).string();
}

VecX in_sample(const Context& ctx) {
  return ctx.series.values.segment(ctx.split.in_begin,
                                   ctx.split.in_end - ctx.split.in_begin);
}

void load_data(Context& ctx, bool force_simulate) {
  const RunConfig& cfg = ctx.cfg;
  if (force_simulate || (cfg.data_file.empty() && cfg.sim.has_theta)) {
    if (!cfg.sim.has_theta)
      throw ConfigError("simulate.theta is not set");
    const SeasonalSpec sp = cfg.seasonal_spec(static_cast<double>(cfg.sim.n));
    const ModelParams prm = cfg.sim.make_params(cfg.truncation);
    const SimulationResult sim = simulate(prm, sp, cfg.sim.n, cfg.sim.seed,
                                          cfg.sim.start, 600, cfg.sim.clip);
    ctx.series = sim.series;
    std::cout << "simulated " << ctx.series.size() << " points (seed "
              << cfg.sim.seed << ", " << sim.n_clipped << " clipped at zero)\n";
  } else {
    if (cfg.data_file.empty())
      throw ConfigError("data.file is not set and no simulation parameters given");
    ctx.series = interpolate_gaps(parse_station_csv(cfg.data_file, cfg.csv),
                                  cfg.max_gap_steps);
    std::cout << "loaded " << ctx.series.size() << " points from "
              << cfg.data_file << "\n";
  }
  const index_t n = ctx.series.size();
  if (cfg.boundary) {
    ctx.split = split(ctx.series, *cfg.boundary);
  } else {
    ctx.split = SampleSplit{0, n, n, n};
  }
  ctx.spec = cfg.seasonal_spec(static_cast<double>(n));
}

void ensure_fits(Context& ctx) {
  if (!ctx.fits.empty()) return;
  const RunConfig& cfg = ctx.cfg;
  FitOptions opts;
  opts.truncation = cfg.truncation;
  opts.max_iterations = cfg.max_iterations;
  opts.compute_se = cfg.standard_errors;
  const VecX w = in_sample(ctx);
  for (ModelKind kind : kinds_of(cfg.kind)) {
    std::cout << "fitting " << model_kind_name(kind) << " model on " << w.size()
              << " in-sample points...\n";
    FitResult f = fit(w, static_cast<double>(ctx.split.in_begin), ctx.spec,
                      cfg.orders, kind, opts);
    std::cout << "  loglik " << f.loglik << ", bic " << f.bic << ", "
              << (f.converged ? "converged" : "NOT converged") << " after "
              << f.iterations << " iterations\n";
    const std::string stem = model_kind_name(kind);
    write_fit_json(f, path_of(ctx, "fit_" + stem + ".json"));
    if (f.se_available)
      write_significance_csv(significance_report(f),
                             path_of(ctx, "significance_" + stem + ".csv"));
    ctx.fits.push_back(std::move(f));
  }
}

void stage_simulate(Context& ctx) {
  write_csv(ctx.series, path_of(ctx, "simulated.csv"));
  std::cout << "wrote " << path_of(ctx, "simulated.csv") << "\n";
}

void stage_spectrum(Context& ctx) {
  const VecX w = in_sample(ctx);
  const Periodogram raw = periodogram(w);
  const Periodogram sm = smooth(raw, ctx.cfg.spectrum_bandwidth);
  const PeriodSet peaks =
      detect_peaks(sm, ctx.cfg.spectrum_max_period, ctx.cfg.spectrum_top_k);
  write_spectrum_csv(raw, sm, path_of(ctx, "spectrum.csv"));
  write_peaks_csv(peaks, path_of(ctx, "peaks.csv"));
  std::cout << "dominant periods (steps):";
  for (const auto& p : peaks.peaks) std::cout << ' ' << p.period;
  std::cout << "\n";
}

index_t forecast_origin_index(const Context& ctx) {
  if (ctx.cfg.forecast_origin) {
    const utc_seconds ts = *ctx.cfg.forecast_origin;
    const auto& s = ctx.series;
    if (ts < s.start || (ts - s.start) % s.step != 0)
      throw ConfigError("forecast.origin is off the series grid");
    const index_t idx = (ts - s.start) / s.step;
    if (idx < 1 || idx >= s.size())
      throw ConfigError("forecast.origin is outside the series");
    return idx;
  }
  return ctx.split.in_end - 1;
}

void stage_forecast(Context& ctx) {
  ensure_fits(ctx);
  const index_t origin = forecast_origin_index(ctx);
  const int h = ctx.cfg.forecast_horizon;
  const index_t lo =
      origin + 1 > ctx.cfg.bt_max_window ? origin + 1 - ctx.cfg.bt_max_window : 0;
  const VecX window = ctx.series.values.segment(lo, origin - lo + 1);
  for (const FitResult& f : ctx.fits) {
    const VecX mean = forecast_mean(f, window, static_cast<double>(lo),
                                    origin - lo, h, ctx.cfg.max_horizon);
    const ResidualPaths rp =
        residual_paths(window, static_cast<double>(lo), f.params, f.spec);
    const ArrX sd = rp.sigma.array().pow(f.params.aparch.delta);
    const VecX scale_delta = forecast_scale_from_paths(f.params, rp.z, sd, h);
    const std::string stem = model_kind_name(f.kind);
    write_forecast_csv(mean, scale_delta, f.params.aparch.delta,
                       path_of(ctx, "forecast_" + stem + ".csv"));
    std::cout << "forecast_" << stem << ".csv: " << h << " steps from "
              << format_iso8601(ctx.series.timestamp(origin)) << "\n";
  }
}

void stage_evaluate(Context& ctx) {
  ensure_fits(ctx);
  if (ctx.split.out_end <= ctx.split.out_begin)
    throw ConfigError("evaluate needs an out-of-sample range; set split.boundary");
  const RunConfig& cfg = ctx.cfg;
  const int h = cfg.bt_horizon;

  std::vector<ForecastModel> models;
  for (const FitResult& f : ctx.fits) {
    models.push_back(ForecastModel{
        model_kind_name(f.kind), [&ctx, &f, h](index_t origin) {
          const index_t lo = origin + 1 > ctx.cfg.bt_max_window
                                 ? origin + 1 - ctx.cfg.bt_max_window
                                 : 0;
          const VecX window = ctx.series.values.segment(lo, origin - lo + 1);
          const VecX m = forecast_mean(f, window, static_cast<double>(lo),
                                       origin - lo, h, ctx.cfg.max_horizon);
          return m[h - 1];
        }});
  }
  models.push_back(ForecastModel{
      "persistence",
      [&ctx](index_t origin) { return ctx.series.values[origin]; }});

  BacktestSettings settings;
  settings.horizon = h;
  settings.n_origins = cfg.bt_n_origins;
  settings.seed = cfg.bt_seed;
  settings.taus = cfg.taus;
  const EvalReport rep =
      rolling_backtest(ctx.series, ctx.split, models, cfg.curve, settings);
  write_eval_csv(rep, path_of(ctx, "eval.csv"));
  write_eval_json(rep, path_of(ctx, "eval.json"));
  for (size_t mi = 0; mi < rep.models.size(); ++mi)
    std::cout << rep.models[mi] << ": rmse " << rep.cells[mi][12].rmse << ", mae "
              << rep.cells[mi][12].mae << " over " << rep.cells[mi][12].count
              << " origins\n";
}

void stage_diagnose(Context& ctx) {
  ensure_fits(ctx);
  const VecX w = in_sample(ctx);
  for (const FitResult& f : ctx.fits) {
    const std::string stem = model_kind_name(f.kind);
    const index_t n = f.eta.size();
    const int acf_lags =
        std::min<int>(ctx.cfg.diagnose_acf_lags, static_cast<int>(n - 1));
    const VecX abs_eta_pow =
        f.eta.array().abs().pow(f.params.aparch.delta).matrix();
    const AcfResult a_eta = acf(f.eta, acf_lags);
    const AcfResult a_abs = acf(abs_eta_pow, acf_lags);
    write_acf_csv(a_eta, a_abs, path_of(ctx, "acf_" + stem + ".csv"));

    std::vector<std::pair<std::string, LjungBoxResult>> lb;
    const int mean_params = f.orders.j + f.orders.q;
    const int scale_params = f.orders.Q + f.orders.P;
    if (ctx.cfg.diagnose_lags > mean_params)
      lb.emplace_back("eta", ljung_box(f.eta, ctx.cfg.diagnose_lags, mean_params));
    if (ctx.cfg.diagnose_lags > scale_params)
      lb.emplace_back("abs_eta_delta",
                      ljung_box(abs_eta_pow, ctx.cfg.diagnose_lags, scale_params));
    write_ljung_box_csv(lb, path_of(ctx, "ljung_box_" + stem + ".csv"));

    const ResidualSummary rs = residual_summary(f, w);
    write_histogram_csv(rs.histogram, path_of(ctx, "histogram_" + stem + ".csv"));
    {
      std::ofstream out(path_of(ctx, "summary_" + stem + ".csv"), std::ios::binary);
      if (!out) throw DataError("cannot write summary file");
      out << "metric,value\n";
      out << "mse," << rs.mse << "\n";
      out << "r_squared," << rs.r_squared << "\n";
      out << "loglik," << f.loglik << "\n";
      out << "bic," << f.bic << "\n";
      out << "converged," << (f.converged ? 1 : 0) << "\n";
      out << "iterations," << f.iterations << "\n";
      out << "n," << f.n << "\n";
    }
    std::cout << "diagnostics for " << stem << ": mse " << rs.mse
              << ", r_squared " << rs.r_squared << "\n";
  }
}

} // namespace

void run_pipeline(const RunConfig& cfg, const std::vector<Stage>& stages) {
  if (stages.empty()) throw ConfigError("no pipeline stage requested");
  Context ctx{cfg, fs::path(cfg.output_dir), {}, {}, {}, {}};
  std::error_code ec;
  fs::create_directories(ctx.out, ec);
  if (ec && !fs::is_directory(ctx.out))
    throw ConfigError("cannot create output directory " + cfg.output_dir);

  const bool force_sim =
      std::find(stages.begin(), stages.end(), Stage::simulate) != stages.end();
  load_data(ctx, force_sim);

  for (Stage s : stages) {
    switch (s) {
      case Stage::simulate: stage_simulate(ctx); break;
      case Stage::spectrum: stage_spectrum(ctx); break;
      case Stage::fit: ensure_fits(ctx); break;
      case Stage::forecast: stage_forecast(ctx); break;
      case Stage::evaluate: stage_evaluate(ctx); break;
      case Stage::diagnose: stage_diagnose(ctx); break;
    }
  }
}

} // namespace windcast
