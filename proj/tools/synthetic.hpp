#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "voltcast/hourly.hpp"

namespace voltcast::synth {

/// Deterministic stand-in for a large RTO's hourly load archive: 24 years of
/// hourly records whose monthly peaks carry growth, footprint-style level
/// shifts, seasonality, a late-2008 recession dip and a mid-2000s volatility
/// burst. Same seed, same bytes, on any platform (own noise source; no
/// std::normal_distribution).
struct SynthConfig {
    int start_year = 1993;
    int months = 288;  // 24 years
    std::uint64_t seed = 42;
};

/// Monthly peak targets in MW, one per month from January of start_year.
std::vector<double> monthly_peaks(const SynthConfig& config = {});

/// Full hourly series; each month's maximum equals the corresponding
/// monthly_peaks value exactly.
HourlySeries hourly_series(const SynthConfig& config = {});

void write_hourly_csv_file(const std::string& path, const SynthConfig& config = {});

}  // namespace voltcast::synth
