#include "windcast/config.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>

#include "windcast/calendar.hpp"
#include "windcast/errors.hpp"

namespace windcast {

ModelParams SimulateConfig::make_params(int truncation) const {
  ModelParams prm;
  prm.theta = theta;
  prm.p = p;
  prm.arfima = ArfimaParams::make(d, ar, ma, truncation);
  prm.aparch = AparchParams::make(alpha0, alpha, gamma, beta, delta);
  prm.skewt = SkewTParams::make(xi, nu);
  return prm;
}

SeasonalSpec RunConfig::seasonal_spec(double series_length) const {
  const double ts = t_scale > 0.0 ? t_scale : series_length;
  SeasonalSpec sp;
  if (indicator) {
    sp = SeasonalSpec::make(s1, s2, *indicator, trend, ts);
  } else if (s1 == 52560.0 && s2 == 144.0) {
    sp = SeasonalSpec::default_spec(trend, ts);
  } else {
    Eigen::MatrixXi def(5, 5);
    def << 0, 1, 1, 1, 1,
           1, 1, 1, 0, 0,
           1, 1, 1, 0, 0,
           1, 0, 0, 0, 0,
           1, 0, 0, 0, 0;
    sp = SeasonalSpec::make(s1, s2, def, trend, ts);
  }
  if (seasonal_p) sp = sp.with_p(*seasonal_p);
  return sp;
}

namespace {

std::string trim(const std::string& s) {
  size_t a = 0, b = s.size();
  while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
  return s.substr(a, b - a);
}

[[noreturn]] void fail(int line, const std::string& what) {
  throw ConfigError("config line " + std::to_string(line) + ": " + what);
}

double to_double(const std::string& v, int line) {
  try {
    size_t pos = 0;
    const double x = std::stod(v, &pos);
    if (pos != v.size()) fail(line, "trailing characters after number '" + v + "'");
    return x;
  } catch (const ConfigError&) {
    throw;
  } catch (const std::exception&) {
    fail(line, "expected a number, got '" + v + "'");
  }
}

long long to_int(const std::string& v, int line) {
  try {
    size_t pos = 0;
    const long long x = std::stoll(v, &pos);
    if (pos != v.size()) fail(line, "trailing characters after integer '" + v + "'");
    return x;
  } catch (const ConfigError&) {
    throw;
  } catch (const std::exception&) {
    fail(line, "expected an integer, got '" + v + "'");
  }
}

bool to_bool(const std::string& v, int line) {
  if (v == "true" || v == "1" || v == "yes" || v == "on") return true;
  if (v == "false" || v == "0" || v == "no" || v == "off") return false;
  fail(line, "expected a boolean, got '" + v + "'");
}

VecX to_vec(const std::string& v, int line) {
  std::vector<double> vals;
  std::stringstream ss(v);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (item.empty()) fail(line, "empty element in list '" + v + "'");
    vals.push_back(to_double(item, line));
  }
  if (vals.empty()) fail(line, "empty list");
  return Eigen::Map<const VecX>(vals.data(), static_cast<index_t>(vals.size()));
}

utc_seconds to_time(const std::string& v, int line) {
  try {
    return parse_iso8601(v);
  } catch (const std::exception& e) {
    fail(line, std::string("bad timestamp: ") + e.what());
  }
}

Eigen::MatrixXi to_indicator(const std::string& v, int line) {
  std::vector<std::string> rows;
  std::stringstream ss(v);
  std::string row;
  while (std::getline(ss, row, ';')) {
    std::string cleaned;
    for (char c : row)
      if (!std::isspace(static_cast<unsigned char>(c))) cleaned.push_back(c);
    if (!cleaned.empty()) rows.push_back(cleaned);
  }
  if (rows.empty()) fail(line, "empty indicator");
  const size_t cols = rows[0].size();
  Eigen::MatrixXi m(static_cast<index_t>(rows.size()), static_cast<index_t>(cols));
  for (size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != cols) fail(line, "ragged indicator rows");
    for (size_t c = 0; c < cols; ++c) {
      if (rows[r][c] != '0' && rows[r][c] != '1')
        fail(line, "indicator entries must be 0 or 1");
      m(static_cast<index_t>(r), static_cast<index_t>(c)) = rows[r][c] - '0';
    }
  }
  return m;
}

} // namespace

RunConfig parse_config_text(const std::string& text) {
  RunConfig cfg;
  std::stringstream ss(text);
  std::string raw;
  int line = 0;
  while (std::getline(ss, raw)) {
    ++line;
    const size_t hash = raw.find('#');
    if (hash != std::string::npos) raw.erase(hash);
    const std::string s = trim(raw);
    if (s.empty()) continue;
    const size_t eq = s.find('=');
    if (eq == std::string::npos) fail(line, "expected 'key = value'");
    const std::string key = trim(s.substr(0, eq));
    const std::string val = trim(s.substr(eq + 1));
    if (key.empty()) fail(line, "empty key");
    if (val.empty()) fail(line, "empty value for '" + key + "'");

    if (key == "data.file") cfg.data_file = val;
    else if (key == "data.timestamp_column") cfg.csv.timestamp_column = val;
    else if (key == "data.speed_column") cfg.csv.speed_column = val;
    else if (key == "data.sentinel") cfg.csv.sentinel = to_double(val, line);
    else if (key == "data.max_gap_steps") cfg.max_gap_steps = static_cast<int>(to_int(val, line));
    else if (key == "split.boundary") cfg.boundary = to_time(val, line);
    else if (key == "seasonal.s1") cfg.s1 = to_double(val, line);
    else if (key == "seasonal.s2") cfg.s2 = to_double(val, line);
    else if (key == "seasonal.indicator") cfg.indicator = to_indicator(val, line);
    else if (key == "seasonal.trend") cfg.trend = to_bool(val, line);
    else if (key == "seasonal.t_scale") cfg.t_scale = to_double(val, line);
    else if (key == "seasonal.p") cfg.seasonal_p = to_vec(val, line);
    else if (key == "model.kind") {
      if (val == "fourier") cfg.kind = ModelChoice::fourier;
      else if (val == "pgen") cfg.kind = ModelChoice::pgen;
      else if (val == "both") cfg.kind = ModelChoice::both;
      else fail(line, "model.kind must be fourier, pgen or both");
    }
    else if (key == "model.orders") {
      const VecX v = to_vec(val, line);
      if (v.size() != 4) fail(line, "model.orders needs j,q,Q,P");
      cfg.orders = Orders{static_cast<int>(v[0]), static_cast<int>(v[1]),
                          static_cast<int>(v[2]), static_cast<int>(v[3])};
    }
    else if (key == "model.truncation") cfg.truncation = static_cast<int>(to_int(val, line));
    else if (key == "model.max_iterations") cfg.max_iterations = static_cast<int>(to_int(val, line));
    else if (key == "model.standard_errors") cfg.standard_errors = to_bool(val, line);
    else if (key == "forecast.origin") cfg.forecast_origin = to_time(val, line);
    else if (key == "forecast.horizon") cfg.forecast_horizon = static_cast<int>(to_int(val, line));
    else if (key == "forecast.max_horizon") cfg.max_horizon = static_cast<int>(to_int(val, line));
    else if (key == "backtest.horizon") cfg.bt_horizon = static_cast<int>(to_int(val, line));
    else if (key == "backtest.n_origins") cfg.bt_n_origins = static_cast<index_t>(to_int(val, line));
    else if (key == "backtest.seed") cfg.bt_seed = static_cast<uint64_t>(to_int(val, line));
    else if (key == "backtest.tau") {
      const VecX v = to_vec(val, line);
      cfg.taus.assign(v.data(), v.data() + v.size());
    }
    else if (key == "backtest.max_window") cfg.bt_max_window = static_cast<index_t>(to_int(val, line));
    else if (key == "power.curve") {
      if (val == "fuhrlaender_md77") cfg.curve = PowerCurve::fuhrlaender_md77();
      else if (val == "ge_1_6mw") cfg.curve = PowerCurve::ge_1_6mw();
      else fail(line, "unknown power.curve '" + val + "'");
    }
    else if (key == "power.cut_in" || key == "power.rated_speed" ||
             key == "power.cut_out" || key == "power.rated_power" ||
             key == "power.air_density" || key == "power.rotor_area") {
      PowerCurve c = cfg.curve;
      const double x = to_double(val, line);
      if (key == "power.cut_in") c.cut_in = x;
      else if (key == "power.rated_speed") c.rated_speed = x;
      else if (key == "power.cut_out") c.cut_out = x;
      else if (key == "power.rated_power") c.rated_power = x;
      else if (key == "power.air_density") c.air_density = x;
      else c.rotor_area = x;
      try {
        cfg.curve = PowerCurve::make(c.cut_in, c.rated_speed, c.cut_out,
                                     c.rated_power, c.air_density, c.rotor_area);
      } catch (const std::exception& e) {
        fail(line, e.what());
      }
    }
    else if (key == "spectrum.bandwidth") cfg.spectrum_bandwidth = static_cast<int>(to_int(val, line));
    else if (key == "spectrum.top_k") cfg.spectrum_top_k = static_cast<int>(to_int(val, line));
    else if (key == "spectrum.max_period") cfg.spectrum_max_period = to_double(val, line);
    else if (key == "diagnose.lags") cfg.diagnose_lags = static_cast<int>(to_int(val, line));
    else if (key == "diagnose.acf_lags") cfg.diagnose_acf_lags = static_cast<int>(to_int(val, line));
    else if (key == "output.dir") cfg.output_dir = val;
    else if (key == "simulate.n") cfg.sim.n = static_cast<index_t>(to_int(val, line));
    else if (key == "simulate.seed") cfg.sim.seed = static_cast<uint64_t>(to_int(val, line));
    else if (key == "simulate.start") cfg.sim.start = to_time(val, line);
    else if (key == "simulate.clip") cfg.sim.clip = to_bool(val, line);
    else if (key == "simulate.theta") { cfg.sim.theta = to_vec(val, line); cfg.sim.has_theta = true; }
    else if (key == "simulate.p") cfg.sim.p = to_vec(val, line);
    else if (key == "simulate.ar") cfg.sim.ar = to_vec(val, line);
    else if (key == "simulate.ma") cfg.sim.ma = to_vec(val, line);
    else if (key == "simulate.alpha") cfg.sim.alpha = to_vec(val, line);
    else if (key == "simulate.gamma") cfg.sim.gamma = to_vec(val, line);
    else if (key == "simulate.beta") cfg.sim.beta = to_vec(val, line);
    else if (key == "simulate.d") cfg.sim.d = to_double(val, line);
    else if (key == "simulate.alpha0") cfg.sim.alpha0 = to_double(val, line);
    else if (key == "simulate.delta") cfg.sim.delta = to_double(val, line);
    else if (key == "simulate.xi") cfg.sim.xi = to_double(val, line);
    else if (key == "simulate.nu") cfg.sim.nu = to_double(val, line);
    else fail(line, "unknown key '" + key + "'");
  }

  // cross-field checks
  if (!(cfg.s1 > cfg.s2 && cfg.s2 > 1.0))
    throw ConfigError("config: need seasonal.s1 > seasonal.s2 > 1");
  if (cfg.orders.j < 0 || cfg.orders.q < 0 || cfg.orders.Q < 0 || cfg.orders.P < 0)
    throw ConfigError("config: negative model order");
  if (cfg.truncation < 1) throw ConfigError("config: model.truncation must be >= 1");
  if (cfg.max_iterations < 1) throw ConfigError("config: model.max_iterations must be >= 1");
  if (cfg.max_gap_steps < 0) throw ConfigError("config: data.max_gap_steps must be >= 0");
  if (cfg.forecast_horizon < 1 || cfg.bt_horizon < 1)
    throw ConfigError("config: horizons must be >= 1");
  if (cfg.max_horizon < 1) throw ConfigError("config: forecast.max_horizon must be >= 1");
  if (cfg.taus.empty()) throw ConfigError("config: backtest.tau must be non-empty");
  for (double t : cfg.taus)
    if (!(t >= 0.0 && t <= 1.0))
      throw ConfigError("config: backtest.tau values must lie in [0, 1]");
  if (cfg.bt_max_window < 2) throw ConfigError("config: backtest.max_window too small");
  if (cfg.spectrum_bandwidth < 1 || cfg.spectrum_bandwidth % 2 == 0)
    throw ConfigError("config: spectrum.bandwidth must be odd and >= 1");
  if (cfg.spectrum_top_k < 1) throw ConfigError("config: spectrum.top_k must be >= 1");
  if (cfg.diagnose_lags < 1 || cfg.diagnose_acf_lags < 1)
    throw ConfigError("config: diagnostic lag counts must be >= 1");
  if (cfg.sim.n < 1) throw ConfigError("config: simulate.n must be >= 1");
  return cfg;
}

RunConfig parse_config_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open config file: " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_config_text(buf.str());
}

} // namespace windcast
