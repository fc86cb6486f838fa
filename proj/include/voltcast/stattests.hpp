#pragma once

#include <map>
#include <optional>
#include <span>
#include <string>

#include "voltcast/distributions.hpp"

namespace voltcast {

/// Outcome of a hypothesis test. For p-value tests, reject <=> p_value < alpha.
/// For critical-value tests (ADF), p_value is absent and reject <=> the
/// statistic falls beyond the critical value at alpha.
struct TestResult {
    std::string name;
    double statistic = 0.0;
    std::optional<double> p_value;
    bool reject = false;
    double alpha = 0.05;
    std::map<std::string, double> detail;
};

enum class AdfRegression { constant, constant_trend };

struct AdfOptions {
    /// Augmentation lags. Unset = the floor(12*(n/100)^(1/4)) default rule.
    std::optional<int> lags;
    /// When true, pick lags in 0..max via AIC on a common sample.
    bool auto_lags = false;
    AdfRegression regression = AdfRegression::constant;
    double alpha = 0.05;
};

/// Augmented Dickey-Fuller unit-root test. The statistic is the t-ratio of
/// the lagged level in the differenced regression; rejection means the series
/// is judged stationary. Critical values come from the embedded
/// response-surface table (1%/5%/10%) interpolated in the sample size.
TestResult adf_test(std::span<const double> series, const AdfOptions& options = {});

/// Ljung-Box portmanteau test on the first `lags` autocorrelations.
/// Q = n(n+2) sum r_k^2/(n-k); chi-square with (lags - fitted_params) dof.
TestResult ljung_box(std::span<const double> residuals, int lags, int fitted_params = 0,
                     double alpha = 0.05);

/// Jarque-Bera normality test: JB = n/6 (S^2 + (K-3)^2/4), chi-square(2).
TestResult jarque_bera(std::span<const double> values, double alpha = 0.05);

/// JB statistic from pre-computed moments (raw kurtosis convention).
double jarque_bera_statistic(std::size_t n, double skewness, double kurtosis);

/// Default ADF augmentation lag: floor(12*(n/100)^(1/4)).
int adf_default_lags(std::size_t n);

}  // namespace voltcast
