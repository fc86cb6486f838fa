#pragma once

namespace voltcast {

/// P(chi2_df > x), the chi-square survival function. Absolute error <= 1e-10.
/// Throws Error(data) for x < 0 or df < 1.
double chi_square_survival(double x, int df);

/// Standard normal CDF.
double normal_cdf(double x);

/// Inverse standard normal CDF on (0, 1). Absolute error <= 1e-8, and
/// antisymmetric within that tolerance.
double normal_quantile(double p);

/// Regularized lower incomplete gamma P(a, x), with Q(a, x) = 1 - P(a, x).
double gamma_p(double a, double x);
double gamma_q(double a, double x);

}  // namespace voltcast
