#include "voltcast/monthly.hpp"

#include "voltcast/error.hpp"

namespace voltcast {

std::string to_string(Aggregation mode) {
    switch (mode) {
        case Aggregation::peak: return "peak";
        case Aggregation::minimum: return "min";
        case Aggregation::sum: return "sum";
        case Aggregation::mean: return "mean";
    }
    return "peak";
}

Aggregation aggregation_from_string(const std::string& name) {
    if (name == "peak" || name == "max") return Aggregation::peak;
    if (name == "min" || name == "minimum") return Aggregation::minimum;
    if (name == "sum") return Aggregation::sum;
    if (name == "mean" || name == "avg") return Aggregation::mean;
    throw usage_error("unknown aggregation mode '" + name + "'");
}

}  // namespace voltcast
