#include "voltcast/arima.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numbers>
#include <sstream>

#include "linalg.hpp"
#include "voltcast/error.hpp"
#include "voltcast/optimize.hpp"
#include "voltcast/series_ops.hpp"

namespace voltcast {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Expands partial autocorrelations r (each in (-1,1)) into AR coefficients of
// a stationary polynomial via the Durbin-Levinson update.
std::vector<double> pacf_to_ar(std::span<const double> r) {
    std::vector<double> cur(r.begin(), r.end());
    std::vector<double> next(cur.size());
    for (std::size_t j = 1; j < cur.size(); ++j) {
        double rj = r[j];
        for (std::size_t k = 0; k < j; ++k) next[k] = cur[k] - rj * cur[j - k - 1];
        std::copy(next.begin(), next.begin() + j, cur.begin());
    }
    return cur;
}

// Inverse recursion: recovers the reflection coefficients from AR
// coefficients. Returns false when any falls outside (-1,1), i.e. the
// polynomial has a root inside the unit circle.
bool ar_to_pacf(std::span<const double> coeffs, std::vector<double>& r) {
    std::vector<double> a(coeffs.begin(), coeffs.end());
    std::vector<double> work(a.size());
    r.assign(a.size(), 0.0);
    for (std::size_t j = a.size(); j-- > 1;) {
        double rc = a[j];
        if (!(std::fabs(rc) < 1.0)) return false;
        r[j] = rc;
        double denom = 1.0 - rc * rc;
        for (std::size_t k = 0; k < j; ++k) work[k] = (a[k] + rc * a[j - k - 1]) / denom;
        std::copy(work.begin(), work.begin() + j, a.begin());
    }
    if (!a.empty()) {
        if (!(std::fabs(a[0]) < 1.0)) return false;
        r[0] = a[0];
    }
    return true;
}

std::vector<double> diff_values(std::span<const double> x, int d) {
    std::vector<double> out(x.begin(), x.end());
    for (int pass = 0; pass < d; ++pass) {
        for (std::size_t i = 0; i + 1 < out.size(); ++i) out[i] = out[i + 1] - out[i];
        out.pop_back();
    }
    return out;
}

// Conditional-sum-of-squares residual recursion with zero pre-sample terms.
void css_residuals(std::span<const double> w, double mu, std::span<const double> phi,
                   std::span<const double> theta, std::vector<double>& eps) {
    const std::size_t m = w.size();
    const std::size_t p = phi.size();
    const std::size_t q = theta.size();
    eps.resize(m);
    for (std::size_t t = 0; t < m; ++t) {
        double pred = 0.0;
        for (std::size_t i = 1; i <= p && i <= t; ++i) pred += phi[i - 1] * (w[t - i] - mu);
        for (std::size_t j = 1; j <= q && j <= t; ++j) pred += theta[j - 1] * eps[t - j];
        eps[t] = (w[t] - mu) - pred;
    }
}

double css_sse(std::span<const double> w, double mu, std::span<const double> phi,
               std::span<const double> theta, std::vector<double>& scratch) {
    css_residuals(w, mu, phi, theta, scratch);
    double sse = 0.0;
    for (double e : scratch) sse += e * e;
    return sse;
}

// Gaussian conditional log-likelihood with sigma2 concentrated out.
double concentrated_loglik(double sse, std::size_t m) {
    double s2 = sse / static_cast<double>(m);
    return -0.5 * static_cast<double>(m) * (std::log(2.0 * std::numbers::pi) + std::log(s2) + 1.0);
}

struct NaturalParams {
    double mu = 0.0;
    std::vector<double> phi;
    std::vector<double> theta;
};

// Optimization runs over (mu, atanh(pacf of AR), atanh(pacf of "-MA")) so that
// stationarity and invertibility hold unconditionally.
struct ParamCodec {
    bool has_mu = false;
    int p = 0;
    int q = 0;

    std::size_t size() const { return (has_mu ? 1 : 0) + p + q; }

    NaturalParams decode(const std::vector<double>& u) const {
        NaturalParams nat;
        std::size_t at = 0;
        if (has_mu) nat.mu = u[at++];
        std::vector<double> r(static_cast<std::size_t>(std::max(p, q)));
        if (p > 0) {
            for (int i = 0; i < p; ++i) r[i] = std::tanh(u[at + i]);
            nat.phi = pacf_to_ar(std::span<const double>(r.data(), p));
            at += p;
        }
        if (q > 0) {
            for (int j = 0; j < q; ++j) r[j] = std::tanh(u[at + j]);
            nat.theta = pacf_to_ar(std::span<const double>(r.data(), q));
            for (auto& t : nat.theta) t = -t;
        }
        return nat;
    }

    std::vector<double> encode(const NaturalParams& nat) const {
        std::vector<double> u;
        u.reserve(size());
        if (has_mu) u.push_back(nat.mu);
        std::vector<double> r;
        if (p > 0) {
            if (!ar_to_pacf(nat.phi, r)) throw usage_error("arima: non-stationary AR start");
            for (double v : r) u.push_back(std::atanh(std::clamp(v, -0.98, 0.98)));
        }
        if (q > 0) {
            std::vector<double> neg(nat.theta.begin(), nat.theta.end());
            for (auto& v : neg) v = -v;
            if (!ar_to_pacf(neg, r)) throw usage_error("arima: non-invertible MA start");
            for (double v : r) u.push_back(std::atanh(std::clamp(v, -0.98, 0.98)));
        }
        return u;
    }
};

// Numerical Hessian of fn at x by central second differences.
std::vector<double> numeric_hessian(const std::function<double(const std::vector<double>&)>& fn,
                                    const std::vector<double>& x) {
    const std::size_t k = x.size();
    std::vector<double> h(k);
    for (std::size_t i = 0; i < k; ++i) h[i] = 1e-4 * std::max(1.0, std::fabs(x[i]));

    std::vector<double> hess(k * k);
    const double f0 = fn(x);
    for (std::size_t i = 0; i < k; ++i) {
        for (std::size_t j = i; j < k; ++j) {
            std::vector<double> xp = x;
            if (i == j) {
                xp[i] = x[i] + h[i];
                double fp = fn(xp);
                xp[i] = x[i] - h[i];
                double fm = fn(xp);
                hess[i * k + i] = (fp - 2.0 * f0 + fm) / (h[i] * h[i]);
            } else {
                double hi = h[i], hj = h[j];
                xp[i] = x[i] + hi;
                xp[j] = x[j] + hj;
                double fpp = fn(xp);
                xp[j] = x[j] - hj;
                double fpm = fn(xp);
                xp[i] = x[i] - hi;
                double fmm = fn(xp);
                xp[j] = x[j] + hj;
                double fmp = fn(xp);
                hess[i * k + j] = hess[j * k + i] = (fpp - fpm - fmp + fmm) / (4.0 * hi * hj);
            }
        }
    }
    return hess;
}

// Standard errors from the observed information of `loglik` at theta.
// Returns empty when the information matrix is not positive definite.
std::vector<double> hessian_std_errors(
    const std::function<double(const std::vector<double>&)>& loglik,
    const std::vector<double>& theta) {
    auto hess = numeric_hessian(loglik, theta);
    const std::size_t k = theta.size();
    for (auto& v : hess) v = -v;  // observed information
    auto cov = detail::spd_inverse(hess, k);
    if (cov.empty()) return {};
    std::vector<double> se(k);
    for (std::size_t i = 0; i < k; ++i) se[i] = std::sqrt(std::max(0.0, cov[i * k + i]));
    return se;
}

// Outer product of per-observation QMLE scores at the optimum,
// d(loglik_t)/d(theta) = -eps_t (d eps_t / d theta) / sigma2, derivatives by
// central differences of the residual path.
std::vector<double> opg_matrix(std::span<const double> w, const NaturalParams& nat,
                               const ParamCodec& codec, double sigma2) {
    const std::size_t k = codec.size();
    const std::size_t m = w.size();
    std::vector<double> theta;
    theta.reserve(k);
    if (codec.has_mu) theta.push_back(nat.mu);
    for (double v : nat.phi) theta.push_back(v);
    for (double v : nat.theta) theta.push_back(v);

    auto natural_at = [&](const std::vector<double>& x) {
        NaturalParams n2;
        std::size_t at = 0;
        if (codec.has_mu) n2.mu = x[at++];
        n2.phi.assign(x.begin() + at, x.begin() + at + codec.p);
        at += codec.p;
        n2.theta.assign(x.begin() + at, x.begin() + at + codec.q);
        return n2;
    };

    // d(eps_t)/d(theta_i) by central differences.
    std::vector<std::vector<double>> deps(k, std::vector<double>(m));
    std::vector<double> ep, em;
    for (std::size_t i = 0; i < k; ++i) {
        double h = 1e-5 * std::max(1.0, std::fabs(theta[i]));
        auto xp = theta;
        xp[i] += h;
        auto np = natural_at(xp);
        css_residuals(w, np.mu, np.phi, np.theta, ep);
        xp[i] = theta[i] - h;
        auto nm = natural_at(xp);
        css_residuals(w, nm.mu, nm.phi, nm.theta, em);
        for (std::size_t t = 0; t < m; ++t) deps[i][t] = (ep[t] - em[t]) / (2.0 * h);
    }

    std::vector<double> eps;
    css_residuals(w, nat.mu, nat.phi, nat.theta, eps);

    std::vector<double> G(k * k, 0.0);
    std::vector<double> g(k);
    for (std::size_t t = 0; t < m; ++t) {
        for (std::size_t i = 0; i < k; ++i) g[i] = -eps[t] * deps[i][t] / sigma2;
        for (std::size_t i = 0; i < k; ++i)
            for (std::size_t j = 0; j < k; ++j) G[i * k + j] += g[i] * g[j];
    }
    return G;
}

// QMLE sandwich: H^-1 G H^-1.
std::vector<double> sandwich_std_errors(std::span<const double> w, const NaturalParams& nat,
                                        const ParamCodec& codec, double sigma2,
                                        const std::function<double(const std::vector<double>&)>& loglik) {
    const std::size_t k = codec.size();
    std::vector<double> theta;
    theta.reserve(k);
    if (codec.has_mu) theta.push_back(nat.mu);
    for (double v : nat.phi) theta.push_back(v);
    for (double v : nat.theta) theta.push_back(v);

    auto G = opg_matrix(w, nat, codec, sigma2);

    auto hess = numeric_hessian(loglik, theta);
    for (auto& v : hess) v = -v;
    auto hinv = detail::spd_inverse(hess, k);
    if (hinv.empty()) return {};

    // cov = Hinv G Hinv
    std::vector<double> tmp(k * k, 0.0), cov(k * k, 0.0);
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < k; ++j) {
            double s = 0.0;
            for (std::size_t l = 0; l < k; ++l) s += hinv[i * k + l] * G[l * k + j];
            tmp[i * k + j] = s;
        }
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < k; ++j) {
            double s = 0.0;
            for (std::size_t l = 0; l < k; ++l) s += tmp[i * k + l] * hinv[l * k + j];
            cov[i * k + j] = s;
        }
    std::vector<double> se(k);
    for (std::size_t i = 0; i < k; ++i) se[i] = std::sqrt(std::max(0.0, cov[i * k + i]));
    return se;
}

}  // namespace

std::string ArimaOrder::str() const {
    std::ostringstream os;
    os << '(' << p << ',' << d << ',' << q << ')';
    return os.str();
}

ArimaOrder ArimaOrder::parse(const std::string& text) {
    ArimaOrder order;
    char c1 = 0, c2 = 0;
    std::istringstream is(text);
    if (!(is >> order.p >> c1 >> order.d >> c2 >> order.q) || c1 != ',' || c2 != ',' ||
        order.p < 0 || order.d < 0 || order.q < 0 || !(is >> std::ws).eof())
        throw usage_error("expected ARIMA order as p,d,q, got '" + text + "'");
    return order;
}

std::vector<std::string> ArimaModel::parameter_names() const {
    std::vector<std::string> names;
    if (has_intercept) names.push_back("mu");
    for (std::size_t i = 0; i < ar.size(); ++i) names.push_back("ar" + std::to_string(i + 1));
    for (std::size_t j = 0; j < ma.size(); ++j) names.push_back("ma" + std::to_string(j + 1));
    return names;
}

std::vector<double> ArimaModel::parameter_values() const {
    std::vector<double> vals;
    if (has_intercept) vals.push_back(intercept);
    vals.insert(vals.end(), ar.begin(), ar.end());
    vals.insert(vals.end(), ma.begin(), ma.end());
    return vals;
}

int ArimaModel::parameter_count() const {
    return (has_intercept ? 1 : 0) + order.p + order.q + 1;  // + sigma2
}

ArimaModel fit_arima(const MonthlySeries& series, ArimaOrder order,
                     const ArimaFitOptions& options) {
    if (order.p < 0 || order.d < 0 || order.q < 0) throw usage_error("arima: negative order");
    if (series.transform.diff != 0)
        throw usage_error("arima: series is already differenced; pass the level series");
    const std::size_t n = series.size();
    const std::size_t need = 10u * static_cast<std::size_t>(order.p + order.q + 1) +
                             static_cast<std::size_t>(order.d);
    if (n < need)
        throw data_error("arima: series length " + std::to_string(n) + " is below the minimum " +
                         std::to_string(need) + " for order " + order.str());

    const auto w_orig = diff_values(series.values, order.d);
    const std::size_t m = w_orig.size();

    // Standardize so the optimizer sees O(1) parameters; coefficients are
    // scale-invariant, mu and sigma2 are mapped back afterwards.
    double w_mean = 0.0;
    for (double v : w_orig) w_mean += v;
    w_mean /= static_cast<double>(m);
    double var = 0.0;
    for (double v : w_orig) var += (v - w_mean) * (v - w_mean);
    var /= static_cast<double>(m);
    const double scale = var > 0.0 ? std::sqrt(var) : 1.0;
    std::vector<double> w(m);
    for (std::size_t t = 0; t < m; ++t) w[t] = w_orig[t] / scale;

    ParamCodec codec{options.include_intercept, order.p, order.q};

    ArimaModel model;
    model.order = order;
    model.has_intercept = options.include_intercept;
    model.transform = series.transform;
    model.transform.diff = order.d;

    NaturalParams nat;
    if (codec.size() == 0) {
        std::vector<double> tmp;
        model.loglik_start = concentrated_loglik(css_sse(w_orig, 0.0, {}, {}, tmp), m);
        model.converged = true;
    } else {
        // Starting point: mean for mu, Yule-Walker reflection coefficients for
        // the AR part, zeros for MA.
        nat.mu = w_mean / scale;
        nat.phi.assign(order.p, 0.0);
        nat.theta.assign(order.q, 0.0);
        if (order.p > 0) {
            try {
                auto pc = pacf(w, order.p);
                std::vector<double> r(order.p);
                for (int i = 0; i < order.p; ++i)
                    r[i] = std::clamp(pc[i + 1].value, -0.9, 0.9);
                nat.phi = pacf_to_ar(r);
            } catch (const Error&) {
                // degenerate series; keep zero start
            }
        }

        std::vector<double> scratch;
        auto objective = [&](const std::vector<double>& u) {
            auto cand = codec.decode(u);
            double sse = css_sse(w, cand.mu, cand.phi, cand.theta, scratch);
            if (!std::isfinite(sse) || sse <= 0.0) return kInf;
            return 0.5 * static_cast<double>(m) * std::log(sse / static_cast<double>(m));
        };

        SimplexOptions nm;
        nm.max_iterations = options.max_iterations;
        nm.x_tolerance = options.tolerance;
        nm.step.assign(codec.size(), 0.3);
        if (codec.has_mu) nm.step[0] = 0.1;

        auto start = codec.encode(nat);
        {
            std::vector<double> tmp;
            double sse0 = css_sse(w_orig, options.include_intercept ? nat.mu * scale : 0.0,
                                  nat.phi, nat.theta, tmp);
            model.loglik_start = concentrated_loglik(sse0, m);
        }
        auto result = nelder_mead(objective, start, nm);
        if (!result.converged)
            throw convergence_error("arima: optimizer did not converge for order " + order.str() +
                                    " after " + std::to_string(result.iterations) +
                                    " iterations (best objective " + std::to_string(result.fmin) +
                                    ")");
        nat = codec.decode(result.x);
        model.converged = true;
        model.iterations = result.iterations;
    }

    // Evaluate the fit on the original scale.
    model.intercept = options.include_intercept ? nat.mu * scale : 0.0;
    model.ar = nat.phi;
    model.ma = nat.theta;
    css_residuals(w_orig, model.intercept, model.ar, model.ma, model.residuals);
    double sse = 0.0;
    for (double e : model.residuals) sse += e * e;
    model.sigma2 = sse / static_cast<double>(m);
    if (!(model.sigma2 > 0.0)) throw data_error("arima: zero residual variance");
    model.loglik = concentrated_loglik(sse, m);

    if (codec.size() > 0) {
        // Standard errors in the standardized space, mapped back through the
        // linear rescale (mu by `scale`, coefficients unchanged).
        std::vector<double> scratch;
        auto loglik_nat = [&](const std::vector<double>& x) {
            NaturalParams n2;
            std::size_t at = 0;
            if (codec.has_mu) n2.mu = x[at++];
            n2.phi.assign(x.begin() + at, x.begin() + at + codec.p);
            at += codec.p;
            n2.theta.assign(x.begin() + at, x.begin() + at + codec.q);
            double s = css_sse(w, n2.mu, n2.phi, n2.theta, scratch);
            if (!std::isfinite(s) || s <= 0.0) return -kInf;
            return concentrated_loglik(s, m);
        };
        std::vector<double> theta_std;
        if (codec.has_mu) theta_std.push_back(nat.mu);
        for (double v : nat.phi) theta_std.push_back(v);
        for (double v : nat.theta) theta_std.push_back(v);

        const double sigma2_std = sse / (scale * scale * static_cast<double>(m));
        auto se = options.robust_se
                      ? sandwich_std_errors(w, nat, codec, sigma2_std, loglik_nat)
                      : hessian_std_errors(loglik_nat, theta_std);
        if (se.empty()) {
            // Information matrix not positive definite (boundary or flat
            // direction); use the OPG estimator, which is PSD by construction.
            auto G = opg_matrix(w, nat, codec, sigma2_std);
            auto cov = detail::spd_inverse(G, codec.size());
            if (!cov.empty()) {
                se.resize(codec.size());
                for (std::size_t i = 0; i < codec.size(); ++i)
                    se[i] = std::sqrt(std::max(0.0, cov[i * codec.size() + i]));
            }
        }
        if (!se.empty() && codec.has_mu) se[0] *= scale;
        model.std_errors = std::move(se);
    }
    return model;
}

std::pair<double, double> information_criteria(double loglik, int k, int n) {
    if (k < 1) throw usage_error("information_criteria: k must be >= 1");
    if (n <= k) throw data_error("information_criteria: need n > k");
    double aic = 2.0 * k - 2.0 * loglik;
    double bic = k * std::log(static_cast<double>(n)) - 2.0 * loglik;
    return {aic, bic};
}

OrderSelection select_order(const MonthlySeries& series, int max_p, int max_d, int max_q,
                            Criterion criterion, parallel::Exec exec) {
    if (max_p < 0 || max_d < 0 || max_q < 0) throw usage_error("select_order: negative bounds");

    std::vector<ArimaOrder> grid;
    for (int p = 0; p <= max_p; ++p)
        for (int d = 0; d <= max_d; ++d)
            for (int q = 0; q <= max_q; ++q) grid.push_back({p, d, q});

    auto rows = parallel::map_indexed<OrderCandidate>(
        grid.size(),
        [&](std::size_t i) {
            OrderCandidate row;
            row.order = grid[i];
            try {
                auto model = fit_arima(series, grid[i]);
                int m = static_cast<int>(series.size()) - grid[i].d;
                auto [aic, bic] =
                    information_criteria(model.loglik, model.parameter_count(), m);
                row.aic = aic;
                row.bic = bic;
                row.loglik = model.loglik;
                row.converged = true;
            } catch (const Error&) {
                row.aic = row.bic = kInf;
                row.loglik = -kInf;
            }
            return row;
        },
        exec);

    auto value = [&](const OrderCandidate& r) { return criterion == Criterion::aic ? r.aic : r.bic; };
    std::stable_sort(rows.begin(), rows.end(), [&](const OrderCandidate& a, const OrderCandidate& b) {
        if (value(a) != value(b)) return value(a) < value(b);
        int ka = a.order.p + a.order.q, kb = b.order.p + b.order.q;
        if (ka != kb) return ka < kb;
        if (a.order.d != b.order.d) return a.order.d < b.order.d;
        return a.order < b.order;
    });

    if (rows.empty() || !rows.front().converged)
        throw convergence_error("select_order: no candidate converged");

    return {rows.front().order, std::move(rows)};
}

MeanForecast forecast_mean(const ArimaModel& model, int horizon, const MonthlySeries& history) {
    if (horizon < 1) throw usage_error("forecast_mean: horizon must be >= 1");
    if (history.transform.diff != 0)
        throw usage_error("forecast_mean: pass the undifferenced history");
    if (history.transform.log != model.transform.log)
        throw usage_error("forecast_mean: history lineage does not match the fitted series");
    const int d = model.order.d;
    if (history.size() <= static_cast<std::size_t>(d) + 1)
        throw data_error("forecast_mean: history too short");

    const auto w = diff_values(history.values, d);
    const std::size_t m = w.size();
    const std::size_t p = model.ar.size();
    const std::size_t q = model.ma.size();

    std::vector<double> eps;
    css_residuals(w, model.intercept, model.ar, model.ma, eps);

    // Extend deviations and innovations forward; future innovations are zero.
    std::vector<double> dev(m + horizon);
    for (std::size_t t = 0; t < m; ++t) dev[t] = w[t] - model.intercept;
    eps.resize(m + horizon, 0.0);
    for (int k = 0; k < horizon; ++k) {
        std::size_t t = m + static_cast<std::size_t>(k);
        double pred = 0.0;
        for (std::size_t i = 1; i <= p && i <= t; ++i) pred += model.ar[i - 1] * dev[t - i];
        for (std::size_t j = 1; j <= q && j <= t; ++j) pred += model.ma[j - 1] * eps[t - j];
        dev[t] = pred;
    }

    // Integrate back to levels, anchored at the history tail.
    // stack[j] is the j-times differenced history; forecasts are accumulated
    // upward one differencing level at a time.
    std::vector<double> fc(horizon);
    for (int k = 0; k < horizon; ++k) fc[k] = model.intercept + dev[m + static_cast<std::size_t>(k)];
    std::vector<std::vector<double>> stack(static_cast<std::size_t>(d) + 1);
    stack[0] = history.values;
    for (int j = 1; j <= d; ++j) stack[j] = diff_values(stack[j - 1], 1);
    for (int j = d - 1; j >= 0; --j) {
        double prev = stack[static_cast<std::size_t>(j)].back();
        for (int k = 0; k < horizon; ++k) {
            fc[k] = prev + fc[k];
            prev = fc[k];
        }
    }

    MeanForecast out;
    out.transformed = fc;
    out.point = fc;
    if (model.transform.log)
        for (auto& v : out.point) v = std::exp(v);

    // psi weights of the level process: theta(B) / (phi(B) (1-B)^d).
    std::vector<double> ar_full(static_cast<std::size_t>(p) + static_cast<std::size_t>(d) + 1, 0.0);
    {
        // c = phi_poly * (1-B)^d, with phi_poly = 1 - sum phi_i B^i
        std::vector<double> c{1.0};
        for (std::size_t i = 0; i < p; ++i) c.push_back(-model.ar[i]);
        for (int pass = 0; pass < d; ++pass) {
            std::vector<double> next(c.size() + 1, 0.0);
            for (std::size_t i = 0; i < c.size(); ++i) {
                next[i] += c[i];
                next[i + 1] -= c[i];
            }
            c = std::move(next);
        }
        for (std::size_t i = 1; i < c.size(); ++i) ar_full[i] = -c[i];  // 1 - sum a_i B^i
    }
    out.psi.assign(static_cast<std::size_t>(horizon), 0.0);
    out.psi[0] = 1.0;
    for (int k = 1; k < horizon; ++k) {
        double v = k <= static_cast<int>(q) ? model.ma[static_cast<std::size_t>(k) - 1] : 0.0;
        for (int i = 1; i <= k && i <= static_cast<int>(p) + d; ++i)
            v += ar_full[static_cast<std::size_t>(i)] * out.psi[static_cast<std::size_t>(k - i)];
        out.psi[static_cast<std::size_t>(k)] = v;
    }
    return out;
}

std::vector<double> arima_residuals(const ArimaModel& model, const MonthlySeries& history) {
    if (history.transform.diff != 0)
        throw usage_error("arima_residuals: pass the undifferenced history");
    const auto w = diff_values(history.values, model.order.d);
    std::vector<double> eps;
    css_residuals(w, model.intercept, model.ar, model.ma, eps);
    return eps;
}

bool ar_coeffs_stationary(std::span<const double> coeffs) {
    std::vector<double> r;
    return ar_to_pacf(coeffs, r);
}

bool ma_coeffs_invertible(std::span<const double> coeffs) {
    std::vector<double> neg(coeffs.begin(), coeffs.end());
    for (auto& v : neg) v = -v;
    std::vector<double> r;
    return ar_to_pacf(neg, r);
}

std::vector<double> simulate_arma(ArimaOrder order, double intercept, std::span<const double> ar,
                                  std::span<const double> ma, std::span<const double> innovations) {
    if (static_cast<int>(ar.size()) != order.p || static_cast<int>(ma.size()) != order.q)
        throw usage_error("simulate_arma: coefficient counts do not match the order");
    if (!ar_coeffs_stationary(ar)) throw data_error("simulate_arma: non-stationary AR part");
    if (!ma_coeffs_invertible(ma)) throw data_error("simulate_arma: non-invertible MA part");

    const std::size_t n = innovations.size();
    std::vector<double> dev(n);
    for (std::size_t t = 0; t < n; ++t) {
        double v = innovations[t];
        for (std::size_t i = 1; i <= ar.size() && i <= t; ++i) v += ar[i - 1] * dev[t - i];
        for (std::size_t j = 1; j <= ma.size() && j <= t; ++j) v += ma[j - 1] * innovations[t - j];
        dev[t] = v;
    }
    for (auto& v : dev) v += intercept;
    for (int pass = 0; pass < order.d; ++pass) {
        double acc = 0.0;
        for (auto& v : dev) {
            acc += v;
            v = acc;
        }
    }
    return dev;
}

std::vector<double> simulate_arma(ArimaOrder order, double intercept, std::span<const double> ar,
                                  std::span<const double> ma, std::size_t n, std::uint64_t seed,
                                  Innovation dist, double sigma2, double shape) {
    if (n < 1) throw usage_error("simulate_arma: n must be >= 1");
    if (!(sigma2 > 0.0)) throw usage_error("simulate_arma: sigma2 must be > 0");

    const std::size_t burn = 10u * static_cast<std::size_t>(order.p + order.q + 1);
    std::mt19937_64 rng(seed);
    const double sd = std::sqrt(sigma2);
    std::vector<double> innov(n + burn);
    for (auto& e : innov) e = sd * sample_innovation(rng, dist, shape);

    auto full = simulate_arma({order.p, 0, order.q}, intercept, ar, ma, innov);
    std::vector<double> out(full.begin() + static_cast<std::ptrdiff_t>(burn), full.end());
    for (int pass = 0; pass < order.d; ++pass) {
        double acc = 0.0;
        for (auto& v : out) {
            acc += v;
            v = acc;
        }
    }
    return out;
}

}  // namespace voltcast
