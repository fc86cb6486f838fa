#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "voltcast/arima.hpp"
#include "voltcast/garch.hpp"
#include "voltcast/monthly.hpp"
#include "voltcast/series_ops.hpp"

namespace voltcast {

/// Pipeline configuration shared by fit, forecast and backtest.
struct MemConfig {
    ArimaOrder arima_order{1, 1, 1};
    int garch_p = 1;
    int garch_q = 1;
    Innovation dist = Innovation::normal;
    /// Fit on log-levels and map forecasts back through exp. On by default:
    /// multiplicative load data fit on the raw scale tends toward integrated
    /// variance dynamics as the level grows, and logs keep forecasts positive.
    bool use_log = true;
    double alpha = 0.05;  // CI level for forecasts
    std::uint64_t seed = 42;
};

/// Two-stage multiplicative error model: ARIMA mean equation, GARCH variance
/// equation on its residuals.
struct MemModel {
    ArimaModel arima;
    GarchModel garch;
    /// The series the ARIMA stage was fitted on (log already applied when the
    /// config asks for it); forecasting continues this history.
    MonthlySeries fitted_series;
    MemConfig config;
};

struct ForecastResult {
    std::vector<YearMonth> months;
    std::vector<double> point;  // level units
    std::vector<double> lower;
    std::vector<double> upper;
    std::vector<double> variance;  // forecast error variance, transformed scale
};

struct EvalMetrics {
    double mape = 0.0;
    double mae = 0.0;
    double directional_accuracy = 0.0;
};

struct ParamStat {
    std::string name;
    double estimate = 0.0;
    double std_error = 0.0;
    double t_statistic = 0.0;
    bool significant = false;  // |t| > 2
};

struct BacktestReport {
    std::vector<YearMonth> months;
    std::vector<double> actuals;
    std::vector<double> forecasts;
    std::vector<double> lower;
    std::vector<double> upper;
    EvalMetrics metrics;
    double ci_coverage = 0.0;
    std::vector<ParamStat> params;
    MemConfig config;
    YearMonth train_end;
    std::size_t train_size = 0;
};

/// Fit both stages on `series` (raw level units). Errors name the failing stage.
MemModel fit_mem(const MonthlySeries& series, const MemConfig& config);

/// Confidence-banded level-unit forecasts. The forecast error variance at
/// step k is sum_{j<k} psi_j^2 h_{t+k-j}; bounds are computed on the
/// transformed scale and mapped through exp when the model is a log fit.
ForecastResult forecast_mem(const MemModel& model, int horizon,
                            std::optional<double> alpha = std::nullopt);

/// MAPE, MAE and directional accuracy. Direction is judged against the
/// previous actual (prior_actual seeds the first step); a zero change counts
/// as a hit only when forecast and actual are both flat.
EvalMetrics evaluate(std::span<const double> actuals, std::span<const double> forecasts,
                     double prior_actual);

/// One row per mean- and variance-equation parameter with t = estimate/stderr.
std::vector<ParamStat> parameter_table(const MemModel& model);

/// Fit on the train side of the split, forecast the test span once, score it.
BacktestReport run_experiment(const MonthlySeries& series, YearMonth train_end,
                              const MemConfig& config);

}  // namespace voltcast
