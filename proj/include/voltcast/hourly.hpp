#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "voltcast/month.hpp"

namespace voltcast {

/// One hourly load observation. `hour` counts hours since 1970-01-01T00:00
/// in the series' own (timezone-naive) clock; `load_mw` is finite and > 0.
struct HourlyRecord {
    std::int64_t hour = 0;
    double load_mw = 0.0;

    CivilHour civil() const { return civil_from_hour_index(hour); }
};

/// Ordered hourly observations with a series-level timezone label.
/// Timestamps are strictly increasing once cleaned.
struct HourlySeries {
    std::vector<HourlyRecord> records;
    std::string timezone = "local";

    std::size_t size() const { return records.size(); }
    bool empty() const { return records.empty(); }
};

}  // namespace voltcast
