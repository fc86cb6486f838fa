#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "voltcast/monthly.hpp"

namespace voltcast {

/// Descriptive moments of a series. Skewness and kurtosis use population
/// (divide-by-n) central moments; std_dev uses the n-1 sample convention.
/// Kurtosis is raw (normal = 3), not excess.
struct SummaryStats {
    std::size_t n = 0;
    double mean = 0.0;
    double max = 0.0;
    double min = 0.0;
    double median = 0.0;
    double std_dev = 0.0;
    double skewness = 0.0;
    double kurtosis = 0.0;
};

struct CorrelogramPoint {
    int lag = 0;
    double value = 0.0;
    /// Half-width of the +-1.96/sqrt(n) white-noise band.
    double confidence_bound = 0.0;
};

struct SplitSpec {
    YearMonth train_end;
    MonthlySeries train;
    MonthlySeries test;
};

/// d-th difference. Output length is input length - d; the lineage stores the
/// initial values needed for an exact inverse.
MonthlySeries difference(const MonthlySeries& series, int d);

/// Exact inverse of `difference`. `initial_values` must hold d entries, the
/// first value consumed by each differencing pass in order.
MonthlySeries integrate(const MonthlySeries& diffed, std::span<const double> initial_values);

/// Elementwise natural log. Every value must be > 0.
MonthlySeries log_transform(const MonthlySeries& series);
MonthlySeries exp_transform(const MonthlySeries& series);

SummaryStats describe(std::span<const double> values);
SummaryStats describe(const MonthlySeries& series);

/// Sample autocorrelations r_0..r_max_lag with the lag-0 sum of squares in
/// the denominator (standard correlogram convention). Errors on a constant
/// series.
std::vector<CorrelogramPoint> acf(std::span<const double> values, int max_lag);

/// Partial autocorrelations via the Durbin-Levinson recursion on the sample
/// ACF. Lag 0 is reported as 1 to align indices with acf().
std::vector<CorrelogramPoint> pacf(std::span<const double> values, int max_lag);

/// Contiguous, exhaustive split: train covers start..train_end, test the rest.
SplitSpec split_train_test(const MonthlySeries& series, YearMonth train_end);

}  // namespace voltcast
