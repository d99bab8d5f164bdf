// Acceptance gate. Each criterion checks one end of the toolkit against an
// independent oracle or a distributional property, prints exactly one
// PASS/FAIL line on stdout and exits nonzero on failure. Progress chatter for
// the slow recovery experiments goes to stderr.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "windcast/arfima.hpp"
#include "windcast/config.hpp"
#include "windcast/diagnostics.hpp"
#include "windcast/estimation.hpp"
#include "windcast/evaluation.hpp"
#include "windcast/forecast.hpp"
#include "windcast/io.hpp"
#include "windcast/pipeline.hpp"
#include "windcast/rng.hpp"
#include "windcast/seasonal.hpp"
#include "windcast/simulate.hpp"
#include "windcast/skewt.hpp"

using namespace windcast;

namespace {

constexpr double kPi = 3.1415926535897932384626433832795;

using Clock = std::chrono::steady_clock;

double secs_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

double median(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const size_t m = v.size() / 2;
  return v.size() % 2 ? v[m] : 0.5 * (v[m - 1] + v[m]);
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// Reference error-process parameter set used across the recovery experiments:
// strong long memory, two AR lags against one MA lag, sub-linear power scale,
// mild right skew.
ModelParams station_error_process() {
  ModelParams prm;
  prm.theta = VecX::Zero(1);
  prm.arfima = ArfimaParams::make(0.431, (VecX(2) << 1.2334, -0.2698).finished(),
                                  (VecX(1) << -0.8065).finished(), 1000);
  prm.aparch = AparchParams::make(0.0012, (VecX(1) << 0.1426).finished(),
                                  (VecX(1) << -0.1208).finished(),
                                  (VecX(2) << 0.5257, 0.3645).finished(), 0.9325);
  prm.skewt = SkewTParams::make(1.0672, 7.8622);
  return prm;
}

// Two harmonics per family, no interactions: small enough to fit in seconds,
// rich enough to carry both periods.
SeasonalSpec compact_spec(double t_scale) {
  Eigen::MatrixXi ind = Eigen::MatrixXi::Zero(3, 3);
  ind(0, 1) = ind(0, 2) = 1;
  ind(1, 0) = ind(2, 0) = 1;
  return SeasonalSpec::make(4320.0, 144.0, ind, true, t_scale);
}

// ---------------------------------------------------------------------------

bool criterion1() {
  const auto t0 = Clock::now();
  const double exps[] = {0.5, 1.0, 2.0, 4.59, 51.3};
  double trig = 0.0, ident = 0.0;
  for (int k = 0; k < 10000; ++k) {
    const double phi = -25.0 + 50.0 * static_cast<double>(k) / 9999.0;
    trig = std::max(trig, std::abs(sin_p(phi, 2.0) - std::sin(phi)));
    trig = std::max(trig, std::abs(cos_p(phi, 2.0) - std::cos(phi)));
    for (double p : exps) {
      const double s = sin_p(phi, p), c = cos_p(phi, p);
      ident = std::max(ident, std::abs(std::pow(std::abs(s), p) +
                                       std::pow(std::abs(c), p) - 1.0));
    }
  }
  const bool ok = trig <= 1e-12 && ident <= 1e-12;
  std::printf("criterion 1: %s  p=2 deviation from sin/cos %.2e, "
              "radius identity deviation %.2e (%.1fs)\n",
              ok ? "PASS" : "FAIL", trig, ident, secs_since(t0));
  return ok;
}

// Closed-form fractional weights through lgamma: an independent route from
// the library's one-term recursion.
VecX lgamma_weights(double d, index_t n) {
  VecX w = VecX::Zero(n);
  w[0] = 1.0;
  if (d == 0.0) return w;
  for (index_t k = 1; k < n; ++k) {
    const double kk = static_cast<double>(k);
    if (d < 0.0)
      w[k] = std::exp(std::lgamma(kk - d) - std::lgamma(kk + 1.0) -
                      std::lgamma(-d));
    else
      // Gamma(-d) rewritten by reflection so every lgamma argument is positive
      w[k] = -std::exp(std::lgamma(kk - d) + std::lgamma(1.0 + d) -
                       std::lgamma(kk + 1.0)) *
             std::sin(kPi * d) / kPi;
  }
  return w;
}

bool criterion2() {
  const auto t0 = Clock::now();
  double wdiff = 0.0;
  for (double d : {-0.4, 0.0, 0.09, 0.23, 0.43}) {
    const VecX lib = frac_diff_weights(d, 1000);
    const VecX ora = lgamma_weights(d, 1000);
    wdiff = std::max(wdiff, (lib - ora).cwiseAbs().maxCoeff());
  }

  // the innovation filter and its inverse cancel on a long noise path
  const ArfimaParams prm =
      ArfimaParams::make(0.43, (VecX(2) << 1.2334, -0.2698).finished(),
                         (VecX(1) << -0.8065).finished(), 1000);
  Rng rng(17);
  VecX eps(10000);
  for (index_t i = 0; i < eps.size(); ++i) eps[i] = rng.normal();
  const VecX back = inverse_filter(filter_to_innovations(eps, prm), prm);
  double rt = 0.0;
  for (index_t i = 1000; i < eps.size(); ++i)
    rt = std::max(rt, std::abs(back[i] - eps[i]));

  const bool ok = wdiff <= 1e-12 && rt <= 1e-8;
  std::printf("criterion 2: %s  weight deviation from lgamma closed form %.2e, "
              "filter round trip %.2e after burn-in (%.1fs)\n",
              ok ? "PASS" : "FAIL", wdiff, rt, secs_since(t0));
  return ok;
}

struct Moments {
  double mass, mean, var;
};

// Simpson on x = tan(u) over the whole line; 200k panels push the
// discretization error far below the tolerances.
Moments density_moments(const SkewTParams& st) {
  const int N = 200001;
  const double a = -kPi / 2.0;
  const double h = kPi / static_cast<double>(N - 1);
  double s0 = 0.0, s1 = 0.0, s2 = 0.0;
  for (int i = 0; i < N; ++i) {
    const double u = a + h * static_cast<double>(i);
    const double cu = std::cos(u);
    if (cu < 1e-12) continue;  // tail mass out there is far below 1e-30
    const double x = std::tan(u);
    const double f = std::exp(skew_t_logpdf(x, st)) * (1.0 + x * x);
    const double wgt = (i == 0 || i == N - 1) ? 1.0 : (i % 2 ? 4.0 : 2.0);
    s0 += wgt * f;
    s1 += wgt * x * f;
    s2 += wgt * x * x * f;
  }
  const double c = h / 3.0;
  Moments m;
  m.mass = c * s0;
  m.mean = c * s1;
  m.var = c * s2 - m.mean * m.mean;
  return m;
}

bool criterion3() {
  const auto t0 = Clock::now();
  const double grid[][2] = {
      {1.02, 7.3}, {1.02, 9.2}, {1.07, 7.3}, {1.07, 9.2}, {1.0443, 8.5}};
  double mass_err = 0.0, mean_err = 0.0, var_err = 0.0;
  for (const auto& g : grid) {
    const Moments m = density_moments(SkewTParams::make(g[0], g[1]));
    mass_err = std::max(mass_err, std::abs(m.mass - 1.0));
    mean_err = std::max(mean_err, std::abs(m.mean));
    var_err = std::max(var_err, std::abs(m.var - 1.0));
  }
  double sym = 0.0;
  for (double nu : {7.3, 9.2}) {
    const SkewTParams st = SkewTParams::make(1.0, nu);
    for (double x : {0.3, 1.1, 2.6, 3.7})
      sym = std::max(sym, std::abs(skew_t_logpdf(x, st) - skew_t_logpdf(-x, st)));
  }
  const bool ok =
      mass_err <= 1e-6 && mean_err <= 1e-5 && var_err <= 1e-5 && sym <= 1e-12;
  std::printf("criterion 3: %s  quadrature errors: mass %.2e, mean %.2e, "
              "variance %.2e; symmetry at xi=1 %.2e (%.1fs)\n",
              ok ? "PASS" : "FAIL", mass_err, mean_err, var_err, sym,
              secs_since(t0));
  return ok;
}

bool criterion4() {
  const auto t0 = Clock::now();
  const ModelParams truth = station_error_process();
  const index_t n = 1000;
  const auto sim = simulate_process(truth, n, 99);
  const int h = 18;

  const VecX sd = sim.sigma.array().pow(truth.aparch.delta);
  const VecX analytic = forecast_scale_from_paths(truth, sim.z, sd, h);

  // Monte Carlo continuation of the scale recursion from the same state
  const int paths = 100000;
  const auto& ap = truth.aparch;
  const int Q = static_cast<int>(ap.alpha.size());
  const int P = static_cast<int>(ap.beta.size());
  double acc = 0.0;
  Rng rng(777);
  std::vector<double> zs(static_cast<size_t>(Q)), ss(static_cast<size_t>(P));
  for (int pth = 0; pth < paths; ++pth) {
    for (int l = 0; l < Q; ++l) zs[static_cast<size_t>(l)] = sim.z[n - 1 - l];
    for (int m = 0; m < P; ++m) ss[static_cast<size_t>(m)] = sd[n - 1 - m];
    double last = 0.0;
    for (int step = 0; step < h; ++step) {
      double s = ap.alpha0;
      for (int l = 0; l < Q; ++l) {
        const double zl = zs[static_cast<size_t>(l)];
        s += ap.alpha[l] * std::pow(std::abs(zl) - ap.gamma[l] * zl, ap.delta);
      }
      for (int m = 0; m < P; ++m) s += ap.beta[m] * ss[static_cast<size_t>(m)];
      const double sig = std::pow(s, 1.0 / ap.delta);
      const double eta = skew_t_sample(truth.skewt, rng, 1)[0];
      for (int l = Q - 1; l > 0; --l)
        zs[static_cast<size_t>(l)] = zs[static_cast<size_t>(l - 1)];
      zs[0] = sig * eta;
      for (int m = P - 1; m > 0; --m)
        ss[static_cast<size_t>(m)] = ss[static_cast<size_t>(m - 1)];
      ss[0] = s;
      last = s;
    }
    acc += last;
  }
  const double mc = acc / static_cast<double>(paths);
  const double rel = std::abs(analytic[h - 1] - mc) / mc;
  const bool ok = rel <= 0.01;
  std::printf("criterion 4: %s  scale forecast at step %d: analytic %.6f vs "
              "%d-path Monte Carlo %.6f, relative gap %.3f%% (%.1fs)\n",
              ok ? "PASS" : "FAIL", h, analytic[h - 1], paths, mc, 100.0 * rel,
              secs_since(t0));
  return ok;
}

bool criterion5() {
  const auto t0 = Clock::now();
  const index_t n = 50000;
  const SeasonalSpec spec = compact_spec(static_cast<double>(n));
  ModelParams truth = station_error_process();
  truth.theta = (VecX(6) << 5.5, 0.1, 0.9, -0.6, 0.45, -0.2).finished();

  FitOptions opts;
  opts.compute_se = false;
  int conv = 0;
  std::vector<double> ed, ea1, ea2, em1, exi;
  for (uint64_t seed = 1; seed <= 10; ++seed) {
    const auto sim = simulate(truth, spec, n, seed, 0, 600, false);
    FitResult fr;
    try {
      fr = fit(sim.series.values, 0.0, spec, Orders{2, 1, 1, 2},
               ModelKind::fourier, opts);
    } catch (const std::exception& e) {
      std::fprintf(stderr, "  seed %llu: fit threw: %s\n",
                   static_cast<unsigned long long>(seed), e.what());
      continue;
    }
    if (!fr.converged) {
      std::fprintf(stderr, "  seed %llu: no convergence\n",
                   static_cast<unsigned long long>(seed));
      continue;
    }
    ++conv;
    const auto& p = fr.params;
    ed.push_back(std::abs(p.arfima.d - 0.431));
    ea1.push_back(std::abs(p.arfima.ar[0] - 1.2334));
    ea2.push_back(std::abs(p.arfima.ar[1] + 0.2698));
    em1.push_back(std::abs(p.arfima.ma[0] + 0.8065));
    exi.push_back(std::abs(p.skewt.xi - 1.0672));
    std::fprintf(stderr,
                 "  seed %llu: d err %.4f, ar errs %.4f/%.4f, ma err %.4f, "
                 "xi err %.4f (%.0fs elapsed)\n",
                 static_cast<unsigned long long>(seed), ed.back(), ea1.back(),
                 ea2.back(), em1.back(), exi.back(), secs_since(t0));
  }
  if (conv == 0) {
    std::printf("criterion 5: FAIL  no fit converged in 10 seeds (%.0fs)\n",
                secs_since(t0));
    return false;
  }
  const double md = median(ed), m1 = median(ea1), m2 = median(ea2),
               m3 = median(em1), mx = median(exi);
  const bool ok =
      conv >= 9 && md <= 0.05 && m1 <= 0.1 && m2 <= 0.1 && m3 <= 0.1 && mx <= 0.05;
  std::printf("criterion 5: %s  converged %d/10; median abs errors: d %.3f, "
              "ar %.3f/%.3f, ma %.3f, xi %.3f (%.0fs)\n",
              ok ? "PASS" : "FAIL", conv, md, m1, m2, m3, mx, secs_since(t0));
  return ok;
}

bool criterion6() {
  const auto t0 = Clock::now();
  const index_t n = 20000;
  const SeasonalSpec spec = compact_spec(static_cast<double>(n));
  ModelParams truth;
  truth.theta = (VecX(6) << 5.5, 0.1, 1.5, -0.8, 0.9, -0.6).finished();
  truth.arfima = ArfimaParams::make(0.2, (VecX(1) << 0.5).finished(),
                                    (VecX(1) << -0.3).finished(), 1000);
  truth.aparch = AparchParams::make(0.02, (VecX(1) << 0.08).finished(),
                                    (VecX(1) << -0.15).finished(),
                                    (VecX(2) << 0.5, 0.2).finished(), 1.2);
  truth.skewt = SkewTParams::make(1.1, 8.0);

  FitOptions opts;
  opts.compute_se = false;
  const Orders ord{1, 1, 1, 2};

  auto bic_pair = [&](const VecX& w, double& b1, double& b2) {
    b1 = fit(w, 0.0, spec, ord, ModelKind::fourier, opts).bic;
    b2 = fit(w, 0.0, spec, ord, ModelKind::pgen, opts).bic;
  };

  int classical_wins = 0, deformed_wins = 0;
  for (uint64_t seed = 1; seed <= 10; ++seed) {
    double b1 = 0.0, b2 = 0.0;
    try {
      // generator built from classical harmonics: the leaner model should win
      const auto simA = simulate(truth, spec, n, seed, 0, 600, false);
      bic_pair(simA.series.values, b1, b2);
      if (b1 <= b2 + 1e-12) ++classical_wins;
      std::fprintf(stderr, "  seed %llu classical: bic %.6f vs %.6f (%.0fs)\n",
                   static_cast<unsigned long long>(seed), b1, b2, secs_since(t0));

      // one diurnal exponent deformed: the richer model should pay off
      ModelParams bent = truth;
      bent.p = VecX::Constant(4, 2.0);
      bent.p[0] = 1.3;
      const auto simB = simulate(bent, spec, n, seed, 0, 600, false);
      bic_pair(simB.series.values, b1, b2);
      if (b2 < b1) ++deformed_wins;
      std::fprintf(stderr, "  seed %llu deformed:  bic %.6f vs %.6f (%.0fs)\n",
                   static_cast<unsigned long long>(seed), b1, b2, secs_since(t0));
    } catch (const std::exception& e) {
      std::fprintf(stderr, "  seed %llu: fit threw: %s\n",
                   static_cast<unsigned long long>(seed), e.what());
    }
  }
  const bool ok = classical_wins >= 8 && deformed_wins >= 8;
  std::printf("criterion 6: %s  classical data: leaner model wins %d/10; "
              "deformed data: exponent model wins %d/10 (%.0fs)\n",
              ok ? "PASS" : "FAIL", classical_wins, deformed_wins, secs_since(t0));
  return ok;
}

bool criterion7() {
  const auto t0 = Clock::now();
  const PowerCurve pc = PowerCurve::fuhrlaender_md77();

  const bool anchors = power_output(2.9, pc) == 0.0 &&
                       std::abs(power_output(13.0, pc) - 1500.0) <= 1e-9 &&
                       power_output(16.5, pc) == 1500.0 &&
                       power_output(19.999, pc) == 1500.0 &&
                       power_output(20.0, pc) == 0.0 &&
                       power_output(35.0, pc) == 0.0;
  const double ramp_end = power_output(std::nextafter(13.0, 0.0), pc);
  const bool cont = std::abs(ramp_end - 1500.0) <= 1e-9;

  // the loss is affine in tau and vanishes for perfect forecasts
  double aff = 0.0, perfect = 0.0;
  const double pairs[][2] = {{10, 8}, {8, 10}, {21, 15}, {5, 2}, {12, 19}};
  for (const auto& pr : pairs) {
    const double l0 = pce_loss(pr[0], pr[1], 0.0, pc);
    const double l1 = pce_loss(pr[0], pr[1], 1.0, pc);
    for (double tau : {0.25, 0.5, 0.75}) {
      const double want = (1.0 - tau) * l0 + tau * l1;
      const double got = pce_loss(pr[0], pr[1], tau, pc);
      aff = std::max(aff, std::abs(got - want) / std::max(1.0, std::abs(want)));
    }
  }
  for (double v : {2.0, 9.0, 14.0, 22.0})
    for (double tau : {0.25, 0.5, 0.75})
      perfect = std::max(perfect, std::abs(pce_loss(v, v, tau, pc)));

  const bool ok = anchors && cont && aff <= 1e-12 && perfect == 0.0;
  std::printf("criterion 7: %s  zone anchors %s, ramp meets plateau within "
              "%.1e, loss affine in tau to %.1e, perfect forecast loss %.1e "
              "(%.1fs)\n",
              ok ? "PASS" : "FAIL", anchors ? "exact" : "broken",
              std::abs(ramp_end - 1500.0), aff, perfect, secs_since(t0));
  return ok;
}

bool criterion8() {
  const auto t0 = Clock::now();
  const index_t n = 1200;
  WindSeries series;
  series.start = 1185926400;
  series.step = 600;
  series.values.resize(n);
  series.gap_mask.assign(static_cast<size_t>(n), false);
  Rng rng(4);
  for (index_t i = 0; i < n; ++i) {
    const double t = static_cast<double>(i);
    series.values[i] = 7.0 + std::sin(2.0 * kPi * t / 144.0) +
                       0.6 * std::cos(2.0 * kPi * t / 48.0) + 0.8 * rng.normal();
  }
  const SampleSplit split{0, 900, 900, n};
  const PowerCurve pc = PowerCurve::fuhrlaender_md77();

  // an oracle that reads the future must score exactly zero everywhere
  const int h = 6;
  std::vector<ForecastModel> models;
  models.push_back(
      {"oracle", [&](index_t o) { return series.values[o + h]; }});
  models.push_back({"persistence", [&](index_t o) {
                      return persistence_forecast(series.values, o, h)[h - 1];
                    }});
  BacktestSettings bs;
  bs.horizon = h;
  bs.n_origins = 200;
  bs.seed = 9;
  const EvalReport r1 = rolling_backtest(series, split, models, pc, bs);
  double oracle_mass = 0.0;
  for (const auto& cell : r1.cells[0]) {
    oracle_mass += std::abs(cell.rmse) + std::abs(cell.mae);
    for (double v : cell.pce) oracle_mass += std::abs(v);
  }

  // a repeated run writes byte-identical artifacts; the engine is single
  // threaded by design, so thread count cannot enter the result
  const EvalReport r2 = rolling_backtest(series, split, models, pc, bs);
  const std::string dir = WINDCAST_TEST_TMP;
  write_eval_csv(r1, dir + "/acc8_a.csv");
  write_eval_csv(r2, dir + "/acc8_b.csv");
  write_eval_json(r1, dir + "/acc8_a.json");
  write_eval_json(r2, dir + "/acc8_b.json");
  const bool bytes_equal =
      slurp(dir + "/acc8_a.csv") == slurp(dir + "/acc8_b.csv") &&
      slurp(dir + "/acc8_a.json") == slurp(dir + "/acc8_b.json") &&
      !slurp(dir + "/acc8_a.csv").empty();

  // exhaustive one-step persistence equals the first-difference formulas
  BacktestSettings b1;
  b1.horizon = 1;
  b1.n_origins = 0;
  std::vector<ForecastModel> pm;
  pm.push_back({"persistence", [&](index_t o) {
                  return persistence_forecast(series.values, o, 1)[0];
                }});
  const EvalReport rp = rolling_backtest(series, split, pm, pc, b1);
  double ss = 0.0, sa = 0.0;
  index_t cnt = 0;
  for (index_t o = split.out_begin; o + 1 < n; ++o) {
    const double diff = series.values[o + 1] - series.values[o];
    ss += diff * diff;
    sa += std::abs(diff);
    ++cnt;
  }
  const auto& all = rp.cells[0][12];
  const double rmse_gap = std::abs(all.rmse - std::sqrt(ss / static_cast<double>(cnt)));
  const double mae_gap = std::abs(all.mae - sa / static_cast<double>(cnt));
  const bool ident = rmse_gap <= 1e-10 && mae_gap <= 1e-10 && all.count == cnt;

  const bool ok = oracle_mass == 0.0 && bytes_equal && ident;
  std::printf("criterion 8: %s  oracle metric mass %.1e, repeated reports "
              "byte-identical %s, one-step persistence matches first "
              "differences within %.1e; single-threaded engine, thread count "
              "cannot alter results (%.1fs)\n",
              ok ? "PASS" : "FAIL", oracle_mass, bytes_equal ? "yes" : "no",
              std::max(rmse_gap, mae_gap), secs_since(t0));
  return ok;
}

bool criterion9() {
  const auto t0 = Clock::now();
  const int reps = 1000, n = 5000, lags = 20;
  const SkewTParams st = SkewTParams::make(1.0672, 7.8622);
  int rej = 0;
  for (int r = 0; r < reps; ++r) {
    Rng rng(1000 + static_cast<uint64_t>(r));
    const VecX x = skew_t_sample(st, rng, n);
    if (ljung_box(x, lags, 0).p_value < 0.05) ++rej;
  }
  const double rate = static_cast<double>(rej) / static_cast<double>(reps);
  const bool ok = rate >= 0.03 && rate <= 0.07;
  std::printf("criterion 9: %s  whiteness test rejects %.1f%% of iid samples "
              "at the 5%% level (%d/%d, %.0fs)\n",
              ok ? "PASS" : "FAIL", 100.0 * rate, rej, reps, secs_since(t0));
  return ok;
}

bool criterion10() {
  const auto t0 = Clock::now();
  RunConfig cfg;
  cfg.s1 = 4320.0;
  cfg.s2 = 144.0;
  Eigen::MatrixXi ind = Eigen::MatrixXi::Zero(3, 3);
  ind(0, 1) = ind(0, 2) = 1;
  ind(1, 0) = ind(2, 0) = 1;
  cfg.indicator = ind;
  cfg.kind = ModelChoice::both;
  cfg.orders = Orders{1, 1, 1, 2};
  cfg.standard_errors = false;
  cfg.bt_horizon = 18;
  cfg.bt_n_origins = 200;
  cfg.bt_seed = 11;

  cfg.sim.n = 60000;
  cfg.sim.seed = 2024;
  cfg.sim.has_theta = true;
  cfg.sim.theta = (VecX(6) << 5.5, 0.1, 1.5, -0.8, 0.9, -0.6).finished();
  cfg.sim.d = 0.431;
  cfg.sim.ar = (VecX(2) << 1.2334, -0.2698).finished();
  cfg.sim.ma = (VecX(1) << -0.8065).finished();
  cfg.sim.alpha0 = 0.0012;
  cfg.sim.alpha = (VecX(1) << 0.1426).finished();
  cfg.sim.gamma = (VecX(1) << -0.1208).finished();
  cfg.sim.beta = (VecX(2) << 0.5257, 0.3645).finished();
  cfg.sim.delta = 0.9325;
  cfg.sim.xi = 1.0672;
  cfg.sim.nu = 7.8622;
  // 48k points in sample, 12k out
  cfg.boundary = cfg.sim.start + 48000 * 600;

  const std::string dir = std::string(WINDCAST_TEST_TMP) + "/acc10";
  std::filesystem::create_directories(dir);
  cfg.output_dir = dir;

  run_pipeline(cfg, {Stage::evaluate});

  std::ifstream in(dir + "/eval.json");
  nlohmann::json j;
  in >> j;
  const double rmse_f = j["models"]["fourier"]["total"]["rmse"].get<double>();
  const double rmse_p = j["models"]["pgen"]["total"]["rmse"].get<double>();
  const double rmse_n = j["models"]["persistence"]["total"]["rmse"].get<double>();
  const bool ok = j["horizon"].get<int>() == 18 &&
                  j["origins"].get<long long>() == 200 && rmse_f < rmse_n &&
                  rmse_p < rmse_n;
  std::printf("criterion 10: %s  3-hour-ahead rmse over 200 origins: "
              "fourier %.4f, pgen %.4f, persistence %.4f (%.0fs)\n",
              ok ? "PASS" : "FAIL", rmse_f, rmse_p, rmse_n, secs_since(t0));
  return ok;
}

} // namespace

int main(int argc, char** argv) {
  if (argc != 2) {
    std::fprintf(stderr, "usage: acceptance <criterion 1..10>\n");
    return 2;
  }
  const int c = std::atoi(argv[1]);
  bool ok = false;
  try {
    switch (c) {
      case 1: ok = criterion1(); break;
      case 2: ok = criterion2(); break;
      case 3: ok = criterion3(); break;
      case 4: ok = criterion4(); break;
      case 5: ok = criterion5(); break;
      case 6: ok = criterion6(); break;
      case 7: ok = criterion7(); break;
      case 8: ok = criterion8(); break;
      case 9: ok = criterion9(); break;
      case 10: ok = criterion10(); break;
      default:
        std::fprintf(stderr, "unknown criterion %d\n", c);
        return 2;
    }
  } catch (const std::exception& e) {
    std::printf("criterion %d: FAIL  unhandled error: %s\n", c, e.what());
    return 1;
  }
  return ok ? 0 : 1;
}
