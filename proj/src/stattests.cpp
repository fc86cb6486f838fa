#include "voltcast/stattests.hpp"

#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "linalg.hpp"
#include "voltcast/error.hpp"
#include "voltcast/series_ops.hpp"

namespace voltcast {

int adf_default_lags(std::size_t n) {
    return static_cast<int>(std::floor(12.0 * std::pow(static_cast<double>(n) / 100.0, 0.25)));
}

namespace {

// Response-surface critical values for the Dickey-Fuller t distribution,
// MacKinnon (2010): crit = b0 + b1/T + b2/T^2 + b3/T^3. Rows: 1%, 5%, 10%.
constexpr double kAdfConstant[3][4] = {
    {-3.43035, -6.5393, -16.786, -79.433},
    {-2.86154, -2.8903, -4.234, -40.040},
    {-2.56677, -1.5384, -2.809, 0.0},
};
constexpr double kAdfConstantTrend[3][4] = {
    {-3.95877, -9.0531, -28.428, -134.155},
    {-3.41049, -4.3904, -9.036, -45.374},
    {-3.12705, -2.5856, -3.925, -22.380},
};

double adf_critical(AdfRegression reg, double level, std::size_t nobs) {
    const auto& table = reg == AdfRegression::constant ? kAdfConstant : kAdfConstantTrend;
    int row = level <= 0.01 ? 0 : (level <= 0.05 ? 1 : 2);
    double T = static_cast<double>(nobs);
    const double* b = table[row];
    return b[0] + b[1] / T + b[2] / (T * T) + b[3] / (T * T * T);
}

struct AdfRegressionFit {
    double stat = 0.0;
    double sse = 0.0;
    std::size_t nobs = 0;
    std::size_t k = 0;
};

// Regress dy_t on [y_{t-1}, 1, (t), dy_{t-1..lags}] over rows t = start..end.
// `start` is an offset into the dy array (dy[t] pairs with level y[t]).
AdfRegressionFit adf_regression(std::span<const double> y, std::span<const double> dy, int lags,
                                std::size_t start, AdfRegression reg) {
    const std::size_t nobs = dy.size() - start;
    const bool trend = reg == AdfRegression::constant_trend;
    const std::size_t k = 2 + (trend ? 1 : 0) + static_cast<std::size_t>(lags);
    if (nobs < k + 1) throw data_error("adf: too few observations for the requested lags");

    std::vector<double> X(nobs * k);
    std::vector<double> rhs(nobs);
    for (std::size_t i = 0; i < nobs; ++i) {
        std::size_t t = start + i;
        rhs[i] = dy[t];
        double* row = &X[i * k];
        row[0] = y[t];  // lagged level: dy[t] = y[t+1]-y[t]
        row[1] = 1.0;
        std::size_t c = 2;
        if (trend) row[c++] = static_cast<double>(i + 1);
        for (int j = 1; j <= lags; ++j) row[c++] = dy[t - j];
    }

    auto fit = detail::ols(X, rhs, nobs, k);
    if (!(fit.std_error[0] > 0.0)) throw data_error("adf: degenerate regression");
    return {fit.coef[0] / fit.std_error[0], fit.sse, nobs, k};
}

}  // namespace

TestResult adf_test(std::span<const double> series, const AdfOptions& options) {
    const std::size_t n = series.size();
    int max_lags = options.lags.value_or(adf_default_lags(n));
    if (max_lags < 0) throw usage_error("adf: lags must be >= 0");
    if (n < 20 + static_cast<std::size_t>(max_lags))
        throw data_error("adf: need at least 20 + lags observations, got " + std::to_string(n));

    std::vector<double> dy(n - 1);
    for (std::size_t t = 0; t + 1 < n; ++t) dy[t] = series[t + 1] - series[t];

    int lags = max_lags;
    if (options.auto_lags) {
        // Common estimation sample across candidates so AICs are comparable.
        std::size_t start = static_cast<std::size_t>(max_lags);
        double best_aic = std::numeric_limits<double>::infinity();
        int best = 0;
        for (int cand = 0; cand <= max_lags; ++cand) {
            auto fit = adf_regression(series, dy, cand, start, options.regression);
            double m = static_cast<double>(fit.nobs);
            double aic = m * std::log(fit.sse / m) + 2.0 * static_cast<double>(fit.k);
            if (aic < best_aic) {
                best_aic = aic;
                best = cand;
            }
        }
        lags = best;
    }

    auto fit = adf_regression(series, dy, lags, static_cast<std::size_t>(lags),
                              options.regression);

    TestResult result;
    result.name = "adf";
    result.statistic = fit.stat;
    result.alpha = options.alpha;
    double crit = adf_critical(options.regression, options.alpha, fit.nobs);
    result.reject = fit.stat < crit;
    result.detail["lags"] = static_cast<double>(lags);
    result.detail["nobs"] = static_cast<double>(fit.nobs);
    result.detail["trend"] = options.regression == AdfRegression::constant_trend ? 1.0 : 0.0;
    result.detail["crit_1pct"] = adf_critical(options.regression, 0.01, fit.nobs);
    result.detail["crit_5pct"] = adf_critical(options.regression, 0.05, fit.nobs);
    result.detail["crit_10pct"] = adf_critical(options.regression, 0.10, fit.nobs);
    return result;
}

TestResult ljung_box(std::span<const double> residuals, int lags, int fitted_params,
                     double alpha) {
    const std::size_t n = residuals.size();
    if (lags <= fitted_params)
        throw usage_error("ljung_box: lags must exceed the number of fitted parameters");
    if (n <= static_cast<std::size_t>(lags))
        throw data_error("ljung_box: series length must exceed the lag count");

    auto points = acf(residuals, lags);
    double q = 0.0;
    for (int k = 1; k <= lags; ++k)
        q += points[k].value * points[k].value / static_cast<double>(n - k);
    q *= static_cast<double>(n) * static_cast<double>(n + 2);

    int dof = lags - fitted_params;
    TestResult result;
    result.name = "ljung_box";
    result.statistic = q;
    result.p_value = chi_square_survival(q, dof);
    result.alpha = alpha;
    result.reject = *result.p_value < alpha;
    result.detail["lags"] = static_cast<double>(lags);
    result.detail["dof"] = static_cast<double>(dof);
    return result;
}

double jarque_bera_statistic(std::size_t n, double skewness, double kurtosis) {
    double excess = kurtosis - 3.0;
    return static_cast<double>(n) / 6.0 * (skewness * skewness + 0.25 * excess * excess);
}

TestResult jarque_bera(std::span<const double> values, double alpha) {
    if (values.size() < 8) throw data_error("jarque_bera: need at least 8 observations");
    auto stats = describe(values);

    TestResult result;
    result.name = "jarque_bera";
    result.statistic = jarque_bera_statistic(stats.n, stats.skewness, stats.kurtosis);
    result.p_value = chi_square_survival(result.statistic, 2);
    result.alpha = alpha;
    result.reject = *result.p_value < alpha;
    result.detail["skewness"] = stats.skewness;
    result.detail["kurtosis"] = stats.kurtosis;
    return result;
}

}  // namespace voltcast
