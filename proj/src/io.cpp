#include "windcast/io.hpp"

#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>

#include "windcast/errors.hpp"

namespace windcast {

namespace {

using nlohmann::json;

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError("cannot write file: " + path);
  return out;
}

json num(double v) {
  if (std::isfinite(v)) return v;
  if (std::isnan(v)) return "nan";
  return v > 0.0 ? "inf" : "-inf";
}

double num_back(const json& j) {
  if (j.is_string()) {
    const auto s = j.get<std::string>();
    if (s == "inf") return std::numeric_limits<double>::infinity();
    if (s == "-inf") return -std::numeric_limits<double>::infinity();
    return std::numeric_limits<double>::quiet_NaN();
  }
  return j.get<double>();
}

json vec_out(const VecX& v) {
  return std::vector<double>(v.data(), v.data() + v.size());
}

VecX vec_in(const json& j) {
  const auto v = j.get<std::vector<double>>();
  return Eigen::Map<const VecX>(v.data(), static_cast<index_t>(v.size()));
}

} // namespace

void write_fit_json(const FitResult& fit, const std::string& path) {
  json j;
  j["kind"] = model_kind_name(fit.kind);
  j["orders"] = {{"j", fit.orders.j}, {"q", fit.orders.q},
                 {"Q", fit.orders.Q}, {"P", fit.orders.P}};

  std::vector<std::string> ind;
  for (index_t r = 0; r < fit.spec.indicator.rows(); ++r) {
    std::string row;
    for (index_t c = 0; c < fit.spec.indicator.cols(); ++c)
      row.push_back(fit.spec.indicator(r, c) ? '1' : '0');
    ind.push_back(std::move(row));
  }
  j["seasonal"] = {{"s1", fit.spec.s1},           {"s2", fit.spec.s2},
                   {"indicator", ind},            {"trend", fit.spec.include_trend},
                   {"t_scale", fit.spec.t_scale}, {"p", vec_out(fit.spec.pack_p())}};

  const auto& prm = fit.params;
  j["params"] = {{"theta", vec_out(prm.theta)},
                 {"p", vec_out(prm.p)},
                 {"d", prm.arfima.d},
                 {"ar", vec_out(prm.arfima.ar)},
                 {"ma", vec_out(prm.arfima.ma)},
                 {"truncation", prm.arfima.truncation},
                 {"alpha0", prm.aparch.alpha0},
                 {"alpha", vec_out(prm.aparch.alpha)},
                 {"gamma", vec_out(prm.aparch.gamma)},
                 {"beta", vec_out(prm.aparch.beta)},
                 {"delta", prm.aparch.delta},
                 {"xi", prm.skewt.xi},
                 {"nu", prm.skewt.nu}};
  j["labels"] = fit.labels;
  if (fit.se_available) j["std_errors"] = vec_out(fit.std_errors);
  j["se_available"] = fit.se_available;
  j["loglik"] = num(fit.loglik);
  j["bic"] = num(fit.bic);
  j["converged"] = fit.converged;
  j["iterations"] = fit.iterations;
  j["t0"] = fit.t0;
  j["n"] = static_cast<std::int64_t>(fit.n);

  auto out = open_out(path);
  out << j.dump(2) << "\n";
}

FitResult read_fit_json(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open fit file: " + path);
  json j;
  try {
    in >> j;
  } catch (const std::exception& e) {
    throw DataError("fit file " + path + ": " + e.what());
  }
  try {
    FitResult fit;
    const std::string kind = j.at("kind").get<std::string>();
    if (kind == "fourier") fit.kind = ModelKind::fourier;
    else if (kind == "pgen") fit.kind = ModelKind::pgen;
    else throw std::invalid_argument("unknown kind '" + kind + "'");
    const auto& jo = j.at("orders");
    fit.orders = Orders{jo.at("j").get<int>(), jo.at("q").get<int>(),
                        jo.at("Q").get<int>(), jo.at("P").get<int>()};

    const auto& js = j.at("seasonal");
    const auto rows = js.at("indicator").get<std::vector<std::string>>();
    if (rows.empty()) throw std::invalid_argument("empty indicator");
    Eigen::MatrixXi ind(static_cast<index_t>(rows.size()),
                        static_cast<index_t>(rows[0].size()));
    for (size_t r = 0; r < rows.size(); ++r) {
      if (rows[r].size() != rows[0].size())
        throw std::invalid_argument("ragged indicator");
      for (size_t c = 0; c < rows[r].size(); ++c)
        ind(static_cast<index_t>(r), static_cast<index_t>(c)) = rows[r][c] == '1';
    }
    fit.spec = SeasonalSpec::make(js.at("s1").get<double>(), js.at("s2").get<double>(),
                                  std::move(ind), js.at("trend").get<bool>(),
                                  js.at("t_scale").get<double>());
    fit.spec = fit.spec.with_p(vec_in(js.at("p")));

    const auto& jp = j.at("params");
    fit.params.theta = vec_in(jp.at("theta"));
    fit.params.p = vec_in(jp.at("p"));
    fit.params.arfima = ArfimaParams::make(jp.at("d").get<double>(), vec_in(jp.at("ar")),
                                           vec_in(jp.at("ma")),
                                           jp.at("truncation").get<int>());
    fit.params.aparch = AparchParams::make(
        jp.at("alpha0").get<double>(), vec_in(jp.at("alpha")), vec_in(jp.at("gamma")),
        vec_in(jp.at("beta")), jp.at("delta").get<double>());
    fit.params.skewt = SkewTParams::make(jp.at("xi").get<double>(), jp.at("nu").get<double>());

    fit.labels = j.at("labels").get<std::vector<std::string>>();
    fit.se_available = j.at("se_available").get<bool>();
    if (fit.se_available) fit.std_errors = vec_in(j.at("std_errors"));
    fit.loglik = num_back(j.at("loglik"));
    fit.bic = num_back(j.at("bic"));
    fit.converged = j.at("converged").get<bool>();
    fit.iterations = j.at("iterations").get<int>();
    fit.t0 = j.at("t0").get<double>();
    fit.n = j.at("n").get<std::int64_t>();
    return fit;
  } catch (const DataError&) {
    throw;
  } catch (const std::exception& e) {
    throw DataError("fit file " + path + ": " + e.what());
  }
}

void write_significance_csv(const std::vector<SignificanceRow>& rows,
                            const std::string& path) {
  auto out = open_out(path);
  out << "parameter,estimate,std_error,null_value,t_stat,p_value\n";
  for (const auto& r : rows)
    out << r.label << ',' << fmt(r.estimate) << ',' << fmt(r.std_error) << ','
        << fmt(r.null_value) << ',' << fmt(r.t_stat) << ',' << fmt(r.p_value) << '\n';
}

void write_forecast_csv(const VecX& mean, const VecX& scale_delta, double delta,
                        const std::string& path) {
  if (mean.size() != scale_delta.size())
    throw std::invalid_argument("write_forecast_csv: length mismatch");
  auto out = open_out(path);
  out << "step,mean,scale_delta,scale\n";
  for (index_t i = 0; i < mean.size(); ++i)
    out << (i + 1) << ',' << fmt(mean[i]) << ',' << fmt(scale_delta[i]) << ','
        << fmt(std::pow(scale_delta[i], 1.0 / delta)) << '\n';
}

void write_spectrum_csv(const Periodogram& raw, const Periodogram& smoothed,
                        const std::string& path) {
  if (raw.frequencies.size() != smoothed.frequencies.size())
    throw std::invalid_argument("write_spectrum_csv: bin mismatch");
  auto out = open_out(path);
  out << "frequency,power,smoothed\n";
  for (index_t i = 0; i < raw.frequencies.size(); ++i)
    out << fmt(raw.frequencies[i]) << ',' << fmt(raw.power[i]) << ','
        << fmt(smoothed.power[i]) << '\n';
}

void write_peaks_csv(const PeriodSet& peaks, const std::string& path) {
  auto out = open_out(path);
  out << "period_steps,power\n";
  for (const auto& p : peaks.peaks)
    out << fmt(p.period) << ',' << fmt(p.power) << '\n';
}

void write_acf_csv(const AcfResult& eta, const AcfResult& abs_eta,
                   const std::string& path) {
  if (eta.values.size() != abs_eta.values.size())
    throw std::invalid_argument("write_acf_csv: lag mismatch");
  auto out = open_out(path);
  out << "lag,acf_eta,acf_abs_eta,band\n";
  for (index_t k = 0; k < eta.values.size(); ++k)
    out << k << ',' << fmt(eta.values[k]) << ',' << fmt(abs_eta.values[k]) << ','
        << fmt(eta.band) << '\n';
}

void write_histogram_csv(const HistogramDensity& hist, const std::string& path) {
  auto out = open_out(path);
  out << "center,left_edge,right_edge,density,fitted_density\n";
  for (index_t b = 0; b < hist.centers.size(); ++b)
    out << fmt(hist.centers[b]) << ',' << fmt(hist.edges[b]) << ','
        << fmt(hist.edges[b + 1]) << ',' << fmt(hist.density[b]) << ','
        << fmt(hist.fitted[b]) << '\n';
}

void write_ljung_box_csv(
    const std::vector<std::pair<std::string, LjungBoxResult>>& rows,
    const std::string& path) {
  auto out = open_out(path);
  out << "series,lags,statistic,df,p_value\n";
  for (const auto& [name, r] : rows)
    out << name << ',' << r.lags << ',' << fmt(r.statistic) << ',' << r.df << ','
        << fmt(r.p_value) << '\n';
}

namespace {

const char* kMonths[12] = {"jan", "feb", "mar", "apr", "may", "jun",
                           "jul", "aug", "sep", "oct", "nov", "dec"};

std::string tau_label(double tau) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "pce_%g", tau);
  return buf;
}

} // namespace

void write_eval_csv(const EvalReport& report, const std::string& path) {
  auto out = open_out(path);
  out << "model,metric,total";
  for (const char* m : kMonths) out << ',' << m;
  out << '\n';
  for (size_t mi = 0; mi < report.models.size(); ++mi) {
    const auto& row = report.cells[mi];
    auto emit = [&](const std::string& metric, auto get) {
      out << report.models[mi] << ',' << metric << ',' << get(row[12]);
      for (int b = 0; b < 12; ++b) out << ',' << get(row[static_cast<size_t>(b)]);
      out << '\n';
    };
    emit("rmse", [](const MetricCell& c) { return fmt(c.rmse); });
    emit("mae", [](const MetricCell& c) { return fmt(c.mae); });
    for (size_t ti = 0; ti < report.taus.size(); ++ti)
      emit(tau_label(report.taus[ti]),
           [ti](const MetricCell& c) { return fmt(c.pce[ti]); });
    emit("count", [](const MetricCell& c) { return std::to_string(c.count); });
  }
}

void write_eval_json(const EvalReport& report, const std::string& path) {
  json j;
  j["taus"] = report.taus;
  j["horizon"] = report.horizon;
  j["seed"] = report.seed;
  j["origins"] = static_cast<std::int64_t>(report.origins);
  json models = json::object();
  auto cell_json = [&](const MetricCell& c) {
    json e;
    e["rmse"] = num(c.rmse);
    e["mae"] = num(c.mae);
    json pce = json::array();
    for (double v : c.pce) pce.push_back(num(v));
    e["pce"] = pce;
    e["count"] = static_cast<std::int64_t>(c.count);
    return e;
  };
  for (size_t mi = 0; mi < report.models.size(); ++mi) {
    json m;
    m["total"] = cell_json(report.cells[mi][12]);
    json months = json::array();
    for (int b = 0; b < 12; ++b)
      months.push_back(cell_json(report.cells[mi][static_cast<size_t>(b)]));
    m["months"] = months;
    models[report.models[mi]] = m;
  }
  j["models"] = models;
  auto out = open_out(path);
  out << j.dump(2) << "\n";
}

} // namespace windcast
