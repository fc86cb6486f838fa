#pragma once

#include <span>
#include <string>
#include <utility>
#include <vector>

#include "voltcast/innovation.hpp"
#include "voltcast/monthly.hpp"
#include "voltcast/parallel.hpp"

namespace voltcast {

struct ArimaOrder {
    int p = 0;
    int d = 0;
    int q = 0;

    auto operator<=>(const ArimaOrder&) const = default;
    std::string str() const;
    static ArimaOrder parse(const std::string& text);  // "p,d,q"
};

struct ArimaFitOptions {
    /// Mean of the d-times differenced series (a drift term when d >= 1).
    bool include_intercept = true;
    int max_iterations = 20000;
    /// Domain tolerance for the simplex search.
    double tolerance = 1e-8;
    /// Sandwich (QMLE) standard errors instead of plain inverse-Hessian.
    bool robust_se = false;
};

/// Fitted mean equation. The model is, for the d-times differenced series w:
///   (w_t - mu) = sum phi_i (w_{t-i} - mu) + eps_t + sum theta_j eps_{t-j}
/// estimated by conditional sum of squares with zero pre-sample terms.
struct ArimaModel {
    ArimaOrder order;
    bool has_intercept = true;
    double intercept = 0.0;
    std::vector<double> ar;
    std::vector<double> ma;
    double sigma2 = 0.0;
    std::vector<double> residuals;  // length n - d
    double loglik = 0.0;
    /// Log-likelihood at the optimizer's starting point; the fit never
    /// returns a point below it.
    double loglik_start = 0.0;
    /// Standard errors aligned with parameter_names(); empty when the model
    /// has no free mean parameters.
    std::vector<double> std_errors;
    Transform transform;  // lineage of the fitted series plus this fit's d
    bool converged = false;
    int iterations = 0;

    std::vector<std::string> parameter_names() const;  // mu, ar1.., ma1..
    std::vector<double> parameter_values() const;
    /// Free parameters counted by the information criteria (mean params + sigma2).
    int parameter_count() const;
};

/// Point forecasts plus the MA(infinity) weights of the level process
/// (differencing folded in), which memforecast needs to assemble multi-step
/// forecast error variance.
struct MeanForecast {
    std::vector<double> point;        // original level units (exp applied if log lineage)
    std::vector<double> transformed;  // pre-exp, post-integration scale
    std::vector<double> psi;          // psi[0] = 1
};

enum class Criterion { aic, bic };

struct OrderCandidate {
    ArimaOrder order;
    double aic = 0.0;
    double bic = 0.0;
    double loglik = 0.0;
    bool converged = false;
};

struct OrderSelection {
    ArimaOrder best;
    std::vector<OrderCandidate> table;  // ranked best-first
};

ArimaModel fit_arima(const MonthlySeries& series, ArimaOrder order,
                     const ArimaFitOptions& options = {});

/// AIC = 2k - 2 loglik, BIC = k ln(n) - 2 loglik. Throws when n <= k.
std::pair<double, double> information_criteria(double loglik, int k, int n);

/// Grid search over orders up to the bounds; winner minimizes the criterion,
/// ties broken toward fewer parameters. Candidates are independent fits and
/// may be evaluated in parallel.
OrderSelection select_order(const MonthlySeries& series, int max_p, int max_d, int max_q,
                            Criterion criterion = Criterion::aic,
                            parallel::Exec exec = parallel::Exec::serial);

MeanForecast forecast_mean(const ArimaModel& model, int horizon, const MonthlySeries& history);

/// Conditional-sum-of-squares residuals of `history` under the model's
/// parameters (the recursion the fit itself uses). Length is history size - d.
std::vector<double> arima_residuals(const ArimaModel& model, const MonthlySeries& history);

/// Deterministic ARMA simulator for recovery oracles. Innovations are drawn
/// standardized with variance sigma2; burn-in of 10 (p+q+1) samples discarded.
std::vector<double> simulate_arma(ArimaOrder order, double intercept, std::span<const double> ar,
                                  std::span<const double> ma, std::size_t n, std::uint64_t seed,
                                  Innovation dist = Innovation::normal, double sigma2 = 1.0,
                                  double shape = 0.0);

/// Same recursion driven by caller-supplied innovations (composite-model oracles).
std::vector<double> simulate_arma(ArimaOrder order, double intercept, std::span<const double> ar,
                                  std::span<const double> ma,
                                  std::span<const double> innovations);

/// True iff the AR polynomial 1 - sum a_i B^i has all roots outside the unit
/// circle (checked via the inverse partial-autocorrelation recursion).
bool ar_coeffs_stationary(std::span<const double> coeffs);
/// True iff 1 + sum theta_j B^j has all roots outside the unit circle.
bool ma_coeffs_invertible(std::span<const double> coeffs);

}  // namespace voltcast
