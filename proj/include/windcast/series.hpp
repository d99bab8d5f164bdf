#pragma once

#include <optional>
#include <string>
#include <vector>

#include "windcast/calendar.hpp"
#include "windcast/types.hpp"

namespace windcast {

// Regular-grid wind-speed series. Missing observations are carried in
// gap_mask; after interpolation every value is finite and non-negative and
// the mask still records which points were filled.
struct WindSeries {
  utc_seconds start = 0;
  std::int64_t step = 600;  // seconds
  VecX values;
  std::vector<bool> gap_mask;

  index_t size() const { return values.size(); }
  utc_seconds timestamp(index_t i) const { return start + step * i; }
};

struct CsvFormat {
  std::string timestamp_column = "timestamp";
  std::string speed_column = "speed_ms";
  std::optional<double> sentinel;  // e.g. -999; empty fields are always gaps
};

// Index ranges [in_begin, in_end) and [out_begin, out_end), contiguous and
// adjacent.
struct SampleSplit {
  index_t in_begin = 0;
  index_t in_end = 0;
  index_t out_begin = 0;
  index_t out_end = 0;
};

// Reads the CSV onto the regular 10-minute grid. Absent rows become gaps, as
// do empty or sentinel-valued speed fields. Throws DataError (naming the
// line) for malformed rows, negative speeds, duplicate or non-monotone or
// off-grid timestamps.
WindSeries parse_station_csv(const std::string& path, const CsvFormat& format = {});

// Linear interpolation between the nearest present neighbors. Errors on a
// leading or trailing gap and on runs longer than max_gap_steps.
WindSeries interpolate_gaps(const WindSeries& series, int max_gap_steps = 36);

// in-sample [start, boundary), out-of-sample [boundary, end]. The boundary
// must be strictly after the first point and no later than the last.
SampleSplit split(const WindSeries& series, utc_seconds boundary);

// Mirrors the input format; values are written with 17 significant digits so
// a parse round-trip is bit-exact.
void write_csv(const WindSeries& series, const std::string& path,
               const CsvFormat& format = {});

} // namespace windcast
