#pragma once

#include <string>
#include <vector>

#include "voltcast/month.hpp"

namespace voltcast {

enum class Aggregation { peak, minimum, sum, mean };

std::string to_string(Aggregation mode);
Aggregation aggregation_from_string(const std::string& name);

/// Transform lineage of a monthly series. Records how the values relate to the
/// original level units so that forecasts can be mapped back exactly:
/// level -> (log?) -> (diff^d). `diff_initial[k]` is the first value consumed
/// by the (k+1)-th differencing pass.
struct Transform {
    bool log = false;
    int diff = 0;
    std::vector<double> diff_initial;

    bool is_raw() const { return !log && diff == 0; }
};

/// Equally spaced monthly values. Consecutive entries are consecutive
/// calendar months starting at `start`.
struct MonthlySeries {
    YearMonth start{1970, 1};
    std::vector<double> values;
    Aggregation aggregation = Aggregation::peak;
    Transform transform;

    std::size_t size() const { return values.size(); }
    bool empty() const { return values.empty(); }
    YearMonth month_at(std::size_t i) const { return start.plus(static_cast<int>(i)); }
    YearMonth last_month() const { return start.plus(static_cast<int>(values.size()) - 1); }
};

}  // namespace voltcast
