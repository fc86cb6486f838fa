#pragma once

#include <random>
#include <span>
#include <vector>

#include "voltcast/monthly.hpp"

namespace testutil {

inline voltcast::MonthlySeries make_series(std::vector<double> values,
                                           voltcast::YearMonth start = {2000, 1}) {
    voltcast::MonthlySeries s;
    s.start = start;
    s.values = std::move(values);
    return s;
}

inline std::vector<double> normal_sample(std::uint64_t seed, std::size_t n, double mean = 0.0,
                                         double sd = 1.0) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> dist(mean, sd);
    std::vector<double> out(n);
    for (auto& v : out) v = dist(rng);
    return out;
}

inline double mean_of(std::span<const double> x) {
    double s = 0.0;
    for (double v : x) s += v;
    return s / static_cast<double>(x.size());
}

}  // namespace testutil
