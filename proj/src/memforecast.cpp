#include "voltcast/memforecast.hpp"

#include <cmath>
#include <string>

#include "voltcast/distributions.hpp"
#include "voltcast/error.hpp"

namespace voltcast {

MemModel fit_mem(const MonthlySeries& series, const MemConfig& config) {
    if (series.size() < 100)
        throw data_error("mem: need at least 100 monthly observations, got " +
                         std::to_string(series.size()));

    MemModel model;
    model.config = config;
    model.fitted_series = config.use_log ? log_transform(series) : series;

    try {
        model.arima = fit_arima(model.fitted_series, config.arima_order);
    } catch (const Error& e) {
        throw Error(e.kind(), std::string("mem: ARIMA stage failed: ") + e.what());
    }

    try {
        GarchFitOptions garch_options;
        garch_options.dist = config.dist;
        model.garch = fit_garch(model.arima.residuals, config.garch_p, config.garch_q,
                                garch_options);
    } catch (const Error& e) {
        throw Error(e.kind(), std::string("mem: GARCH stage failed: ") + e.what());
    }
    return model;
}

ForecastResult forecast_mem(const MemModel& model, int horizon, std::optional<double> alpha) {
    if (horizon < 1) throw usage_error("forecast_mem: horizon must be >= 1");
    const double a = alpha.value_or(model.config.alpha);
    if (!(a > 0.0 && a < 1.0)) throw usage_error("forecast_mem: alpha must be in (0,1)");

    auto mean = forecast_mean(model.arima, horizon, model.fitted_series);
    auto hfc = forecast_variance(model.garch, horizon);
    const double z = normal_quantile(1.0 - a / 2.0);

    ForecastResult out;
    out.months.reserve(static_cast<std::size_t>(horizon));
    out.variance.resize(static_cast<std::size_t>(horizon));
    out.point = mean.point;
    out.lower.resize(static_cast<std::size_t>(horizon));
    out.upper.resize(static_cast<std::size_t>(horizon));

    const YearMonth origin = model.fitted_series.last_month();
    for (int k = 1; k <= horizon; ++k) {
        // Var(e_{t+k}) = sum_{j=0}^{k-1} psi_j^2 h_{t+k-j}
        double var = 0.0;
        for (int j = 0; j < k; ++j)
            var += mean.psi[static_cast<std::size_t>(j)] * mean.psi[static_cast<std::size_t>(j)] *
                   hfc[static_cast<std::size_t>(k - j - 1)];
        const std::size_t idx = static_cast<std::size_t>(k - 1);
        out.variance[idx] = var;
        double half = z * std::sqrt(var);
        double lo = mean.transformed[idx] - half;
        double hi = mean.transformed[idx] + half;
        if (model.arima.transform.log) {
            lo = std::exp(lo);
            hi = std::exp(hi);
        }
        out.lower[idx] = lo;
        out.upper[idx] = hi;
        out.months.push_back(origin.plus(k));
    }
    return out;
}

EvalMetrics evaluate(std::span<const double> actuals, std::span<const double> forecasts,
                     double prior_actual) {
    if (actuals.size() != forecasts.size())
        throw data_error("evaluate: actual and forecast lengths differ");
    if (actuals.empty()) throw data_error("evaluate: empty series");

    EvalMetrics metrics;
    const auto n = static_cast<double>(actuals.size());
    std::size_t hits = 0;
    double prev = prior_actual;
    for (std::size_t t = 0; t < actuals.size(); ++t) {
        double err = std::fabs(actuals[t] - forecasts[t]);
        metrics.mae += err;
        if (!(actuals[t] > 0.0))
            throw data_error("evaluate: MAPE requires positive actuals (index " +
                             std::to_string(t) + ")");
        metrics.mape += err / actuals[t];

        auto sign = [](double v) { return v > 0.0 ? 1 : (v < 0.0 ? -1 : 0); };
        if (sign(forecasts[t] - prev) == sign(actuals[t] - prev)) ++hits;
        prev = actuals[t];
    }
    metrics.mae /= n;
    metrics.mape *= 100.0 / n;
    metrics.directional_accuracy = static_cast<double>(hits) / n;
    return metrics;
}

std::vector<ParamStat> parameter_table(const MemModel& model) {
    std::vector<ParamStat> rows;
    auto add = [&](const std::string& prefix, const std::vector<std::string>& names,
                   const std::vector<double>& values, const std::vector<double>& errors) {
        if (errors.size() != values.size())
            throw data_error("parameter_table: standard errors unavailable for the " + prefix +
                             " stage");
        for (std::size_t i = 0; i < values.size(); ++i) {
            ParamStat row;
            row.name = prefix + "." + names[i];
            row.estimate = values[i];
            row.std_error = errors[i];
            if (!(row.std_error > 0.0) || !std::isfinite(row.std_error))
                throw data_error("parameter_table: missing standard error for " + row.name);
            row.t_statistic = row.estimate / row.std_error;
            row.significant = std::fabs(row.t_statistic) > 2.0;
            rows.push_back(row);
        }
    };
    add("arima", model.arima.parameter_names(), model.arima.parameter_values(),
        model.arima.std_errors);
    add("garch", model.garch.parameter_names(), model.garch.parameter_values(),
        model.garch.std_errors);
    return rows;
}

BacktestReport run_experiment(const MonthlySeries& series, YearMonth train_end,
                              const MemConfig& config) {
    auto split = split_train_test(series, train_end);
    auto model = fit_mem(split.train, config);
    auto fc = forecast_mem(model, static_cast<int>(split.test.size()));

    BacktestReport report;
    report.config = config;
    report.train_end = train_end;
    report.train_size = split.train.size();
    report.months = fc.months;
    report.actuals = split.test.values;
    report.forecasts = fc.point;
    report.lower = fc.lower;
    report.upper = fc.upper;
    report.metrics = evaluate(report.actuals, report.forecasts, split.train.values.back());

    std::size_t covered = 0;
    for (std::size_t t = 0; t < report.actuals.size(); ++t)
        if (report.actuals[t] >= fc.lower[t] && report.actuals[t] <= fc.upper[t]) ++covered;
    report.ci_coverage = static_cast<double>(covered) / static_cast<double>(report.actuals.size());

    report.params = parameter_table(model);
    return report;
}

}  // namespace voltcast
