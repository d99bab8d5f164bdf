#include "windcast/evaluation.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_map>

#include "windcast/calendar.hpp"
#include "windcast/errors.hpp"
#include "windcast/rng.hpp"

namespace windcast {

namespace {

struct KahanSum {
  double s = 0.0, c = 0.0;
  void add(double x) {
    const double y = x - c;
    const double t = s + y;
    c = (t - s) - y;
    s = t;
  }
  double value() const { return s; }
};

} // namespace

PowerCurve PowerCurve::make(double cut_in, double rated_speed, double cut_out,
                            double rated_power, double air_density,
                            double rotor_area) {
  if (!(0.0 < cut_in && cut_in < rated_speed && rated_speed < cut_out))
    throw std::invalid_argument("PowerCurve: need 0 < cut_in < rated_speed < cut_out");
  if (!(rated_power > 0.0 && air_density > 0.0 && rotor_area > 0.0))
    throw std::invalid_argument("PowerCurve: power, density and area must be positive");
  PowerCurve c;
  c.cut_in = cut_in;
  c.rated_speed = rated_speed;
  c.cut_out = cut_out;
  c.rated_power = rated_power;
  c.air_density = air_density;
  c.rotor_area = rotor_area;
  // 0.5 cp rho A v^3 [W] = 1000 rated_power [kW] at v = rated_speed.
  c.cp = 2000.0 * rated_power /
         (air_density * rotor_area * rated_speed * rated_speed * rated_speed);
  return c;
}

PowerCurve PowerCurve::fuhrlaender_md77() {
  const double r = 77.0 / 2.0;
  return make(3.0, 13.0, 20.0, 1500.0, 1.25, 3.1415926535897932 * r * r);
}

PowerCurve PowerCurve::ge_1_6mw() {
  const double r = 82.5 / 2.0;
  return make(3.5, 12.0, 25.0, 1600.0, 1.25, 3.1415926535897932 * r * r);
}

double power_output(double speed, const PowerCurve& curve) {
  if (!(speed >= 0.0) || !std::isfinite(speed))
    throw std::invalid_argument("power_output: speed must be a finite non-negative value");
  if (speed < curve.cut_in) return 0.0;
  if (speed < curve.rated_speed) {
    const double p = 0.0005 * curve.cp * curve.air_density * curve.rotor_area *
                     speed * speed * speed;
    return std::min(p, curve.rated_power);
  }
  if (speed < curve.cut_out) return curve.rated_power;
  return 0.0;
}

double pce_loss(double actual_speed, double forecast_speed, double tau,
                const PowerCurve& curve) {
  if (!(tau >= 0.0 && tau <= 1.0))
    throw std::invalid_argument("pce_loss: tau must lie in [0, 1]");
  const double pa = power_output(actual_speed, curve);
  const double pf = power_output(forecast_speed, curve);
  return actual_speed >= forecast_speed ? tau * (pa - pf) : (1.0 - tau) * (pf - pa);
}

double rmse(const VecX& actual, const VecX& forecast) {
  if (actual.size() != forecast.size() || actual.size() == 0)
    throw std::invalid_argument("rmse: length mismatch or empty input");
  return std::sqrt((actual - forecast).squaredNorm() /
                   static_cast<double>(actual.size()));
}

double mae(const VecX& actual, const VecX& forecast) {
  if (actual.size() != forecast.size() || actual.size() == 0)
    throw std::invalid_argument("mae: length mismatch or empty input");
  return (actual - forecast).cwiseAbs().mean();
}

EvalReport rolling_backtest(const WindSeries& series, const SampleSplit& split,
                            const std::vector<ForecastModel>& models,
                            const PowerCurve& curve,
                            const BacktestSettings& settings) {
  if (models.empty())
    throw std::invalid_argument("rolling_backtest: no models");
  if (settings.horizon < 1)
    throw std::invalid_argument("rolling_backtest: horizon must be >= 1");
  if (settings.taus.empty())
    throw std::invalid_argument("rolling_backtest: tau list is empty");
  for (double t : settings.taus)
    if (!(t >= 0.0 && t <= 1.0))
      throw std::invalid_argument("rolling_backtest: tau outside [0, 1]");

  const index_t n = series.size();
  const index_t h = settings.horizon;
  const index_t lo = split.out_begin;
  const index_t hi = n - 1 - h;
  if (lo < 1 || hi < lo)
    throw DataError("rolling_backtest: no valid forecast origin in the "
                    "out-of-sample range at this horizon");

  std::vector<index_t> origins;
  if (settings.n_origins == 0) {
    origins.resize(static_cast<size_t>(hi - lo + 1));
    for (index_t k = lo; k <= hi; ++k) origins[static_cast<size_t>(k - lo)] = k;
  } else {
    Rng rng(settings.seed);
    origins.resize(static_cast<size_t>(settings.n_origins));
    const uint64_t span = static_cast<uint64_t>(hi - lo + 1);
    for (auto& o : origins) o = lo + static_cast<index_t>(rng.uniform_below(span));
  }

  const size_t nm = models.size(), nt = settings.taus.size();
  // Per model and bucket: squared error, absolute error, one sum per tau.
  struct Acc {
    KahanSum sq, ab;
    std::vector<KahanSum> pce;
    index_t count = 0;
  };
  std::vector<std::array<Acc, 13>> acc(nm);
  for (auto& row : acc)
    for (auto& a : row) a.pce.resize(nt);

  // Duplicate origins (sampling is with replacement) reuse the first
  // prediction; forecasts are deterministic functions of the origin.
  std::vector<std::unordered_map<index_t, double>> memo(nm);

  for (index_t origin : origins) {
    const index_t target = origin + h;
    const double actual = series.values[target];
    const int month = civil_from_utc(series.timestamp(target)).month;
    for (size_t mi = 0; mi < nm; ++mi) {
      auto [it, fresh] = memo[mi].try_emplace(origin, 0.0);
      if (fresh) it->second = models[mi].forecast(origin);
      const double fc = it->second;
      const double err = actual - fc;
      for (int bucket : {month - 1, 12}) {
        Acc& a = acc[mi][static_cast<size_t>(bucket)];
        a.sq.add(err * err);
        a.ab.add(std::abs(err));
        for (size_t ti = 0; ti < nt; ++ti)
          a.pce[ti].add(pce_loss(actual, fc, settings.taus[ti], curve));
        ++a.count;
      }
    }
  }

  EvalReport rep;
  rep.taus = settings.taus;
  rep.horizon = settings.horizon;
  rep.seed = settings.seed;
  rep.origins = static_cast<index_t>(origins.size());
  rep.cells.resize(nm);
  for (size_t mi = 0; mi < nm; ++mi) {
    rep.models.push_back(models[mi].name);
    for (size_t b = 0; b < 13; ++b) {
      const Acc& a = acc[mi][b];
      MetricCell& cell = rep.cells[mi][b];
      cell.count = a.count;
      cell.pce.assign(nt, 0.0);
      if (a.count == 0) continue;
      const double cnt = static_cast<double>(a.count);
      cell.rmse = std::sqrt(a.sq.value() / cnt);
      cell.mae = a.ab.value() / cnt;
      for (size_t ti = 0; ti < nt; ++ti) cell.pce[ti] = a.pce[ti].value() / cnt;
    }
  }
  return rep;
}

} // namespace windcast
