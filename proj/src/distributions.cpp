#include "voltcast/distributions.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include "voltcast/error.hpp"

namespace voltcast {

namespace {

constexpr int kMaxIter = 500;
constexpr double kEps = 1e-16;

// Series expansion of P(a, x), converges fast for x < a + 1.
double gamma_p_series(double a, double x) {
    double ap = a;
    double sum = 1.0 / a;
    double del = sum;
    for (int n = 0; n < kMaxIter; ++n) {
        ap += 1.0;
        del *= x / ap;
        sum += del;
        if (std::fabs(del) < std::fabs(sum) * kEps) break;
    }
    return sum * std::exp(-x + a * std::log(x) - std::lgamma(a));
}

// Continued fraction for Q(a, x) by modified Lentz, for x >= a + 1.
double gamma_q_cf(double a, double x) {
    const double tiny = std::numeric_limits<double>::min() / kEps;
    double b = x + 1.0 - a;
    double c = 1.0 / tiny;
    double d = 1.0 / b;
    double h = d;
    for (int i = 1; i <= kMaxIter; ++i) {
        double an = -i * (i - a);
        b += 2.0;
        d = an * d + b;
        if (std::fabs(d) < tiny) d = tiny;
        c = b + an / c;
        if (std::fabs(c) < tiny) c = tiny;
        d = 1.0 / d;
        double delta = d * c;
        h *= delta;
        if (std::fabs(delta - 1.0) < kEps) break;
    }
    return std::exp(-x + a * std::log(x) - std::lgamma(a)) * h;
}

}  // namespace

double gamma_p(double a, double x) {
    if (x < 0.0 || a <= 0.0) throw data_error("gamma_p: requires x >= 0 and a > 0");
    if (x == 0.0) return 0.0;
    if (x < a + 1.0) return gamma_p_series(a, x);
    return 1.0 - gamma_q_cf(a, x);
}

double gamma_q(double a, double x) {
    if (x < 0.0 || a <= 0.0) throw data_error("gamma_q: requires x >= 0 and a > 0");
    if (x == 0.0) return 1.0;
    if (x < a + 1.0) return 1.0 - gamma_p_series(a, x);
    return gamma_q_cf(a, x);
}

double chi_square_survival(double x, int df) {
    if (x < 0.0) throw data_error("chi_square_survival: x must be >= 0");
    if (df < 1) throw data_error("chi_square_survival: df must be >= 1");
    return gamma_q(0.5 * df, 0.5 * x);
}

double normal_cdf(double x) { return 0.5 * std::erfc(-x / std::numbers::sqrt2); }

namespace {

// Solves normal_cdf(x) = p for p in (0, 0.5] by bisection bracketing followed
// by Newton polish. No rational-approximation constants to get wrong; erfc
// carries the precision.
double lower_quantile(double p) {
    double lo = -40.0, hi = 0.0;
    for (int i = 0; i < 80; ++i) {
        double mid = 0.5 * (lo + hi);
        if (normal_cdf(mid) < p)
            lo = mid;
        else
            hi = mid;
        if (hi - lo < 1e-10) break;
    }
    double x = 0.5 * (lo + hi);
    for (int i = 0; i < 3; ++i) {
        double pdf = std::exp(-0.5 * x * x) / std::sqrt(2.0 * std::numbers::pi);
        if (pdf <= 0.0) break;
        double step = (normal_cdf(x) - p) / pdf;
        x -= step;
        if (std::fabs(step) < 1e-14) break;
    }
    return x;
}

}  // namespace

double normal_quantile(double p) {
    if (!(p > 0.0 && p < 1.0)) throw data_error("normal_quantile: p must be in (0, 1)");
    if (p == 0.5) return 0.0;
    return p < 0.5 ? lower_quantile(p) : -lower_quantile(1.0 - p);
}

}  // namespace voltcast
