#include "windcast/series.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "windcast/errors.hpp"

namespace windcast {

namespace {

std::vector<std::string> split_fields(const std::string& line) {
  std::vector<std::string> out;
  std::string cur;
  for (const char c : line) {
    if (c == ',') {
      out.push_back(cur);
      cur.clear();
    } else if (c != '\r') {
      cur += c;
    }
  }
  out.push_back(cur);
  return out;
}

std::string trim(const std::string& s) {
  size_t a = s.find_first_not_of(" \t");
  if (a == std::string::npos) return "";
  size_t b = s.find_last_not_of(" \t");
  return s.substr(a, b - a + 1);
}

} // namespace

WindSeries parse_station_csv(const std::string& path, const CsvFormat& format) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open " + path);

  std::string line;
  if (!std::getline(in, line)) throw DataError(path + ": empty file");
  const auto header = split_fields(line);
  index_t ts_col = -1, sp_col = -1;
  for (size_t i = 0; i < header.size(); ++i) {
    if (trim(header[i]) == format.timestamp_column) ts_col = static_cast<index_t>(i);
    if (trim(header[i]) == format.speed_column) sp_col = static_cast<index_t>(i);
  }
  if (ts_col < 0) throw DataError(path + ": missing column " + format.timestamp_column);
  if (sp_col < 0) throw DataError(path + ": missing column " + format.speed_column);

  std::vector<utc_seconds> stamps;
  std::vector<double> speeds;  // NaN marks a gap
  long line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    const auto fields = split_fields(line);
    const auto where = [&] { return path + " line " + std::to_string(line_no); };
    if (static_cast<index_t>(fields.size()) <= std::max(ts_col, sp_col))
      throw DataError(where() + ": too few fields");

    utc_seconds t;
    try {
      t = parse_iso8601(trim(fields[static_cast<size_t>(ts_col)]));
    } catch (const std::invalid_argument& e) {
      throw DataError(where() + ": " + e.what());
    }
    if (!stamps.empty()) {
      if (t == stamps.back()) throw DataError(where() + ": duplicate timestamp");
      if (t < stamps.back()) throw DataError(where() + ": non-monotone timestamp");
    }

    const std::string sp = trim(fields[static_cast<size_t>(sp_col)]);
    double v = std::numeric_limits<double>::quiet_NaN();
    if (!sp.empty()) {
      char* end = nullptr;
      v = std::strtod(sp.c_str(), &end);
      if (end != sp.c_str() + sp.size())
        throw DataError(where() + ": unparseable speed '" + sp + "'");
      if (format.sentinel && v == *format.sentinel) {
        v = std::numeric_limits<double>::quiet_NaN();
      } else if (!std::isfinite(v)) {
        throw DataError(where() + ": non-finite speed");
      } else if (v < 0.0) {
        throw DataError(where() + ": negative speed " + sp);
      }
    }
    stamps.push_back(t);
    speeds.push_back(v);
  }
  if (stamps.empty()) throw DataError(path + ": no data rows");

  WindSeries s;
  s.start = stamps.front();
  const std::int64_t span = stamps.back() - stamps.front();
  for (size_t i = 0; i < stamps.size(); ++i)
    if ((stamps[i] - s.start) % s.step != 0)
      throw DataError(path + ": timestamp " + format_iso8601(stamps[i])
                      + " is off the 10-minute grid");
  const index_t n = static_cast<index_t>(span / s.step) + 1;
  s.values = VecX::Constant(n, std::numeric_limits<double>::quiet_NaN());
  s.gap_mask.assign(static_cast<size_t>(n), true);
  for (size_t i = 0; i < stamps.size(); ++i) {
    const index_t k = static_cast<index_t>((stamps[i] - s.start) / s.step);
    if (!std::isnan(speeds[i])) {
      s.values[k] = speeds[i];
      s.gap_mask[static_cast<size_t>(k)] = false;
    }
  }
  return s;
}

WindSeries interpolate_gaps(const WindSeries& series, int max_gap_steps) {
  const index_t n = series.size();
  if (n == 0) throw DataError("interpolate_gaps: empty series");
  if (series.gap_mask.size() != static_cast<size_t>(n))
    throw std::invalid_argument("interpolate_gaps: mask/value length mismatch");
  if (series.gap_mask.front()) throw DataError("interpolate_gaps: leading gap has no anchor");
  if (series.gap_mask.back()) throw DataError("interpolate_gaps: trailing gap has no anchor");

  WindSeries out = series;
  index_t i = 0;
  while (i < n) {
    if (!out.gap_mask[static_cast<size_t>(i)]) { ++i; continue; }
    index_t j = i;
    while (j < n && out.gap_mask[static_cast<size_t>(j)]) ++j;
    const index_t run = j - i;
    if (run > max_gap_steps)
      throw DataError("interpolate_gaps: gap of " + std::to_string(run)
                      + " steps at " + format_iso8601(series.timestamp(i))
                      + " exceeds the maximum of " + std::to_string(max_gap_steps));
    const double a = out.values[i - 1];
    const double b = out.values[j];
    for (index_t k = i; k < j; ++k)
      out.values[k] = a + (b - a) * static_cast<double>(k - i + 1)
                        / static_cast<double>(run + 1);
    i = j;
  }
  return out;
}

SampleSplit split(const WindSeries& series, utc_seconds boundary) {
  const index_t n = series.size();
  if (n < 2) throw DataError("split: series too short");
  if (boundary <= series.start || boundary > series.timestamp(n - 1))
    throw DataError("split: boundary " + format_iso8601(boundary)
                    + " is outside the series");
  const std::int64_t offset = boundary - series.start;
  const index_t k = static_cast<index_t>((offset + series.step - 1) / series.step);
  return SampleSplit{0, k, k, n};
}

void write_csv(const WindSeries& series, const std::string& path,
               const CsvFormat& format) {
  std::ofstream out(path);
  if (!out) throw DataError("cannot write " + path);
  out << format.timestamp_column << ',' << format.speed_column << '\n';
  char buf[64];
  for (index_t i = 0; i < series.size(); ++i) {
    std::snprintf(buf, sizeof buf, "%.17g", series.values[i]);
    out << format_iso8601(series.timestamp(i)) << ',' << buf << '\n';
  }
  if (!out) throw DataError("write failed: " + path);
}

} // namespace windcast
