#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "voltcast/innovation.hpp"

namespace voltcast {

/// Variance-equation coefficients. Valid when omega > 0, every alpha and beta
/// is >= 0, and persistence (sum of all alpha and beta) is < 1, which keeps
/// the unconditional variance finite.
struct GarchParams {
    double omega = 0.0;
    std::vector<double> alpha;  // ARCH terms, on lagged squared residuals
    std::vector<double> beta;   // GARCH terms, on lagged variances

    int p() const { return static_cast<int>(alpha.size()); }
    int q() const { return static_cast<int>(beta.size()); }
    double persistence() const;
    double unconditional_variance() const;
    bool valid() const;
};

/// How pre-sample variance and squared residuals are initialized.
enum class VarianceInit { sample_variance, unconditional };

struct GarchFitOptions {
    Innovation dist = Innovation::normal;
    VarianceInit init = VarianceInit::sample_variance;
    int max_iterations = 20000;
    double tolerance = 1e-8;
};

struct GarchModel {
    GarchParams params;
    Innovation dist = Innovation::normal;
    double shape = 0.0;  // t dof or gamma shape; NaN for normal
    /// Prediction-aligned variance path: h[t] = Var(Z_t | F_{t-1}), length n.
    std::vector<double> h;
    double loglik = 0.0;
    /// Aligned with parameter_names(): omega, alpha1.., beta1.., [shape].
    std::vector<double> std_errors;
    bool converged = false;
    int iterations = 0;
    /// State captured at the end of the sample so variance forecasts are
    /// self-contained: newest-last squared residuals (p) and variances (q).
    std::vector<double> tail_z2;
    std::vector<double> tail_h;

    std::vector<std::string> parameter_names() const;
    std::vector<double> parameter_values() const;
};

struct VolatilityCluster {
    std::size_t start = 0;  // inclusive month indices into the h path
    std::size_t end = 0;
    double peak_variance = 0.0;
};

/// Variance recursion, updated convention: out[t] is the variance implied by
/// data through t (the one-step-ahead forecast made at t), i.e.
///   out[t] = omega + sum_i alpha_i Z^2[t+1-i] + sum_j beta_j out[t-j]
/// with pre-sample squares and variances set to h0.
std::vector<double> conditional_variance(const GarchParams& params,
                                         std::span<const double> residuals, double h0);

/// Log-likelihood of the residuals under the standardized innovation density;
/// the variance assigned to Z_t is the aligned path h[t] (h[0] = init value).
double garch_loglik(const GarchParams& params, std::span<const double> residuals,
                    Innovation dist = Innovation::normal, double shape = 0.0,
                    VarianceInit init = VarianceInit::sample_variance);

/// Constrained MLE via an unconstrained reparametrization (log omega, softmax
/// coefficients), so every returned model satisfies the validity constraints
/// by construction.
GarchModel fit_garch(std::span<const double> residuals, int p, int q,
                     const GarchFitOptions& options = {});

/// Multi-step variance forecasts: exact one step ahead, then the recursion
/// with future squared shocks replaced by their expectation. Converges to the
/// unconditional variance.
std::vector<double> forecast_variance(const GarchModel& model, int horizon);

/// Simulates (residuals, true aligned variance path); burn-in of 500 samples
/// discarded. Deterministic for a fixed seed.
std::pair<std::vector<double>, std::vector<double>> simulate_garch(const GarchParams& params,
                                                                   std::size_t n,
                                                                   std::uint64_t seed,
                                                                   Innovation dist = Innovation::normal,
                                                                   double shape = 0.0);

/// Maximal runs where h exceeds threshold_multiple times the median of h.
/// Reporting heuristic only.
std::vector<VolatilityCluster> detect_clusters(std::span<const double> h,
                                               double threshold_multiple = 2.0);

}  // namespace voltcast
