#include "voltcast/garch.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <random>

#include "linalg.hpp"
#include "voltcast/error.hpp"
#include "voltcast/optimize.hpp"

namespace voltcast {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double sample_variance_of(std::span<const double> z) {
    double s = 0.0;
    for (double v : z) s += v * v;
    return s / static_cast<double>(z.size());
}

double init_value(const GarchParams& params, std::span<const double> residuals,
                  VarianceInit init) {
    return init == VarianceInit::sample_variance ? sample_variance_of(residuals)
                                                 : params.unconditional_variance();
}

// Aligned path: v[t] = Var(Z_t | F_{t-1}) with v[0] pinned to the h0 policy
// value and pre-sample squared residuals set to h0. Equals
// {h0} ++ conditional_variance(...)[0..n-2].
std::vector<double> aligned_variance_path(const GarchParams& params,
                                          std::span<const double> residuals, double h0) {
    const std::size_t n = residuals.size();
    const int p = params.p(), q = params.q();
    std::vector<double> v(n);
    v[0] = h0;
    for (std::size_t t = 1; t < n; ++t) {
        double s = params.omega;
        for (int i = 1; i <= p; ++i) {
            std::ptrdiff_t idx = static_cast<std::ptrdiff_t>(t) - i;
            double z2 = idx >= 0 ? residuals[static_cast<std::size_t>(idx)] *
                                       residuals[static_cast<std::size_t>(idx)]
                                 : h0;
            s += params.alpha[static_cast<std::size_t>(i - 1)] * z2;
        }
        for (int j = 1; j <= q; ++j) {
            std::ptrdiff_t idx = static_cast<std::ptrdiff_t>(t) - j;
            s += params.beta[static_cast<std::size_t>(j - 1)] *
                 (idx >= 0 ? v[static_cast<std::size_t>(idx)] : h0);
        }
        v[t] = s;
    }
    return v;
}

double loglik_from_path(std::span<const double> residuals, std::span<const double> v,
                        Innovation dist, double shape) {
    double ll = 0.0;
    for (std::size_t t = 0; t < residuals.size(); ++t) {
        if (!(v[t] > 0.0)) return -kInf;
        double sd = std::sqrt(v[t]);
        ll += innovation_log_density(residuals[t] / sd, dist, shape) - std::log(sd);
    }
    return ll;
}

// Unconstrained coding: omega = exp(u0); the p+q coefficients are a softmax
// with an implicit remainder category, so each is positive and the sum is
// below 1 for any real input. Shape (when estimated) rides along as
// nu = 2 + exp(u) or k = exp(u).
struct GarchCodec {
    int p = 0;
    int q = 0;
    Innovation dist = Innovation::normal;

    bool has_shape() const { return dist != Innovation::normal; }
    std::size_t size() const {
        return 1 + static_cast<std::size_t>(p + q) + (has_shape() ? 1 : 0);
    }

    void decode(const std::vector<double>& u, GarchParams& params, double& shape) const {
        params.omega = std::exp(u[0]);
        double denom = 1.0;
        for (int i = 0; i < p + q; ++i) denom += std::exp(u[static_cast<std::size_t>(i) + 1]);
        params.alpha.resize(static_cast<std::size_t>(p));
        params.beta.resize(static_cast<std::size_t>(q));
        for (int i = 0; i < p; ++i)
            params.alpha[static_cast<std::size_t>(i)] =
                std::exp(u[static_cast<std::size_t>(i) + 1]) / denom;
        for (int j = 0; j < q; ++j)
            params.beta[static_cast<std::size_t>(j)] =
                std::exp(u[static_cast<std::size_t>(p + j) + 1]) / denom;
        if (has_shape()) {
            double raw = std::exp(u.back());
            shape = dist == Innovation::student_t ? 2.0 + raw : raw;
        }
    }

    std::vector<double> encode(const GarchParams& params, double shape) const {
        std::vector<double> u(size());
        u[0] = std::log(params.omega);
        double rest = 1.0 - params.persistence();
        for (int i = 0; i < p; ++i)
            u[static_cast<std::size_t>(i) + 1] =
                std::log(std::max(params.alpha[static_cast<std::size_t>(i)], 1e-8) / rest);
        for (int j = 0; j < q; ++j)
            u[static_cast<std::size_t>(p + j) + 1] =
                std::log(std::max(params.beta[static_cast<std::size_t>(j)], 1e-8) / rest);
        if (has_shape())
            u.back() = std::log(dist == Innovation::student_t ? shape - 2.0 : shape);
        return u;
    }
};

}  // namespace

double GarchParams::persistence() const {
    double s = 0.0;
    for (double a : alpha) s += a;
    for (double b : beta) s += b;
    return s;
}

double GarchParams::unconditional_variance() const { return omega / (1.0 - persistence()); }

bool GarchParams::valid() const {
    if (!(omega > 0.0) || !std::isfinite(omega)) return false;
    for (double a : alpha)
        if (a < 0.0 || !std::isfinite(a)) return false;
    for (double b : beta)
        if (b < 0.0 || !std::isfinite(b)) return false;
    return persistence() < 1.0;
}

std::vector<std::string> GarchModel::parameter_names() const {
    std::vector<std::string> names{"omega"};
    for (std::size_t i = 0; i < params.alpha.size(); ++i)
        names.push_back("alpha" + std::to_string(i + 1));
    for (std::size_t j = 0; j < params.beta.size(); ++j)
        names.push_back("beta" + std::to_string(j + 1));
    if (dist == Innovation::student_t) names.push_back("nu");
    if (dist == Innovation::std_gamma) names.push_back("gamma_shape");
    return names;
}

std::vector<double> GarchModel::parameter_values() const {
    std::vector<double> vals{params.omega};
    vals.insert(vals.end(), params.alpha.begin(), params.alpha.end());
    vals.insert(vals.end(), params.beta.begin(), params.beta.end());
    if (dist != Innovation::normal) vals.push_back(shape);
    return vals;
}

std::vector<double> conditional_variance(const GarchParams& params,
                                         std::span<const double> residuals, double h0) {
    if (!params.valid()) throw data_error("garch: invalid parameters");
    if (!(h0 > 0.0)) throw data_error("garch: h0 must be > 0");
    const std::size_t n = residuals.size();
    if (n < static_cast<std::size_t>(std::max(params.p(), params.q())) + 1)
        throw data_error("garch: residual series too short for the order");

    // out[t] is the update after observing Z_t; shift of the aligned path.
    std::vector<double> out(n);
    const int p = params.p(), q = params.q();
    for (std::size_t t = 0; t < n; ++t) {
        double s = params.omega;
        for (int i = 1; i <= p; ++i) {
            std::ptrdiff_t idx = static_cast<std::ptrdiff_t>(t) - (i - 1);
            double z2 = idx >= 0 ? residuals[static_cast<std::size_t>(idx)] *
                                       residuals[static_cast<std::size_t>(idx)]
                                 : h0;
            s += params.alpha[static_cast<std::size_t>(i - 1)] * z2;
        }
        for (int j = 1; j <= q; ++j) {
            std::ptrdiff_t idx = static_cast<std::ptrdiff_t>(t) - j;
            s += params.beta[static_cast<std::size_t>(j - 1)] *
                 (idx >= 0 ? out[static_cast<std::size_t>(idx)] : h0);
        }
        out[t] = s;
    }
    return out;
}

double garch_loglik(const GarchParams& params, std::span<const double> residuals, Innovation dist,
                    double shape, VarianceInit init) {
    if (!params.valid()) throw data_error("garch: invalid parameters");
    if (residuals.empty()) throw data_error("garch: empty residual series");
    double h0 = init_value(params, residuals, init);
    auto v = aligned_variance_path(params, residuals, h0);
    return loglik_from_path(residuals, v, dist, shape);
}

GarchModel fit_garch(std::span<const double> residuals, int p, int q,
                     const GarchFitOptions& options) {
    if (p < 0 || q < 0 || p + q < 1) throw usage_error("garch: order must have p + q >= 1");
    if (residuals.size() < 50)
        throw data_error("garch: need at least 50 residuals, got " +
                         std::to_string(residuals.size()));

    const std::size_t n = residuals.size();
    const double raw_var = sample_variance_of(residuals);
    if (!(raw_var > 0.0)) throw data_error("garch: residuals have zero variance");
    const double scale = std::sqrt(raw_var);

    // Fit on unit-variance residuals; omega and the variance path scale back
    // by scale^2, alpha/beta are invariant.
    std::vector<double> z(n);
    for (std::size_t t = 0; t < n; ++t) z[t] = residuals[t] / scale;

    GarchCodec codec{p, q, options.dist};
    // Stationarity-favoring tie-break. On homoskedastic data the likelihood
    // is near-flat in persistence (alpha=0 with omega=(1-beta)v is one exact
    // ridge) and chance fluctuations otherwise pull the fit to the
    // integrated-variance boundary; half a nat per unit persistence settles
    // such fits at the constant-variance end while moving well-identified
    // estimates by O(1/n).
    constexpr double kRidgeTieBreak = 0.5;
    auto objective = [&](const std::vector<double>& u) {
        GarchParams cand;
        double shape = default_shape(options.dist);
        codec.decode(u, cand, shape);
        if (!cand.valid()) return kInf;
        double h0 = options.init == VarianceInit::sample_variance
                        ? 1.0  // z standardized
                        : cand.unconditional_variance();
        auto v = aligned_variance_path(cand, z, h0);
        double ll = loglik_from_path(z, v, options.dist, shape);
        if (!std::isfinite(ll)) return kInf;
        return -ll + kRidgeTieBreak * cand.persistence();
    };

    // Deterministic multistart over persistence levels; highest likelihood wins.
    const double start_totals[] = {0.9, 0.5, 0.97};
    SimplexResult best;
    best.fmin = kInf;
    SimplexOptions nm;
    nm.max_iterations = options.max_iterations;
    nm.x_tolerance = options.tolerance;
    nm.step.assign(codec.size(), 0.5);
    for (double total : start_totals) {
        GarchParams start;
        start.alpha.assign(static_cast<std::size_t>(p), p > 0 ? total * 0.2 / p : 0.0);
        start.beta.assign(static_cast<std::size_t>(q), q > 0 ? total * 0.8 / q : 0.0);
        if (q == 0)
            for (auto& a : start.alpha) a = total / p;
        start.omega = std::max(1.0 - start.persistence(), 1e-4);
        auto res = nelder_mead(objective, codec.encode(start, default_shape(options.dist)), nm);
        if (res.converged && res.fmin < best.fmin) best = res;
    }
    if (!std::isfinite(best.fmin))
        throw convergence_error("garch: optimizer did not converge for order (" +
                                std::to_string(p) + "," + std::to_string(q) + ")");

    GarchModel model;
    model.dist = options.dist;
    model.shape = default_shape(options.dist);
    codec.decode(best.x, model.params, model.shape);
    model.converged = true;
    model.iterations = best.iterations;

    // Standard errors in natural coordinates on the standardized scale.
    {
        auto path_at = [&](const std::vector<double>& x, GarchParams& cand, double& shp) {
            cand.alpha.assign(x.begin() + 1, x.begin() + 1 + p);
            cand.beta.assign(x.begin() + 1 + p, x.begin() + 1 + p + q);
            cand.omega = x[0];
            shp = codec.has_shape() ? x.back() : model.shape;
            if (!cand.valid()) return std::vector<double>{};
            if (options.dist == Innovation::student_t && !(shp > 2.0)) return std::vector<double>{};
            if (options.dist == Innovation::std_gamma && !(shp > 0.0)) return std::vector<double>{};
            double h0 = options.init == VarianceInit::sample_variance
                            ? 1.0
                            : cand.unconditional_variance();
            return aligned_variance_path(cand, z, h0);
        };
        auto loglik_nat = [&](const std::vector<double>& x) {
            GarchParams cand;
            double shp = 0.0;
            auto v = path_at(x, cand, shp);
            if (v.empty()) return -kInf;
            return loglik_from_path(z, v, options.dist, shp);
        };
        auto per_obs = [&](const std::vector<double>& x) {
            GarchParams cand;
            double shp = 0.0;
            auto v = path_at(x, cand, shp);
            std::vector<double> terms(n, -kInf);
            if (v.empty()) return terms;
            for (std::size_t t = 0; t < n; ++t) {
                double sd = std::sqrt(v[t]);
                terms[t] = innovation_log_density(z[t] / sd, options.dist, shp) - std::log(sd);
            }
            return terms;
        };
        std::vector<double> theta{model.params.omega};
        theta.insert(theta.end(), model.params.alpha.begin(), model.params.alpha.end());
        theta.insert(theta.end(), model.params.beta.begin(), model.params.beta.end());
        if (codec.has_shape()) theta.push_back(model.shape);

        // Differencing happens at a point nudged inside the feasible region,
        // so boundary fits (coefficients at 0, persistence near 1) still get
        // finite curvature estimates.
        const std::size_t nk = theta.size();
        std::vector<double> step(nk);
        for (std::size_t i = 0; i < nk; ++i) step[i] = 1e-4 * std::max(std::fabs(theta[i]), 1e-3);
        for (std::size_t i = 0; i < 1 + static_cast<std::size_t>(p + q); ++i)
            theta[i] = std::max(theta[i], 2.0 * step[i]);
        if (codec.has_shape() && options.dist == Innovation::student_t)
            theta[nk - 1] = std::max(theta[nk - 1], 2.0 + 2.0 * step[nk - 1]);
        {
            double persist = 0.0;
            for (std::size_t i = 1; i <= static_cast<std::size_t>(p + q); ++i) persist += theta[i];
            double room = (1.0 - persist) / 4.0;
            if (room > 0.0)
                for (std::size_t i = 1; i <= static_cast<std::size_t>(p + q); ++i)
                    step[i] = std::min(step[i], room);
        }

        auto hess = [&] {
            const std::size_t k = theta.size();
            std::vector<double> H(k * k);
            double f0 = loglik_nat(theta);
            for (std::size_t i = 0; i < k; ++i) {
                for (std::size_t j = i; j < k; ++j) {
                    auto xp = theta;
                    if (i == j) {
                        xp[i] = theta[i] + step[i];
                        double fp = loglik_nat(xp);
                        xp[i] = theta[i] - step[i];
                        double fm = loglik_nat(xp);
                        H[i * k + i] = (fp - 2.0 * f0 + fm) / (step[i] * step[i]);
                    } else {
                        xp[i] = theta[i] + step[i];
                        xp[j] = theta[j] + step[j];
                        double fpp = loglik_nat(xp);
                        xp[j] = theta[j] - step[j];
                        double fpm = loglik_nat(xp);
                        xp[i] = theta[i] - step[i];
                        double fmm = loglik_nat(xp);
                        xp[j] = theta[j] + step[j];
                        double fmp = loglik_nat(xp);
                        H[i * k + j] = H[j * k + i] =
                            (fpp - fpm - fmp + fmm) / (4.0 * step[i] * step[j]);
                    }
                }
            }
            return H;
        }();
        auto info = hess;
        for (auto& v : info) v = -v;
        auto cov = detail::spd_inverse(info, theta.size());
        if (cov.empty()) {
            // Boundary optimum: the observed information is not positive
            // definite. Fall back to the outer product of per-observation
            // scores (BHHH), which is PSD by construction.
            const std::size_t k = theta.size();
            std::vector<std::vector<double>> scores(k);
            for (std::size_t i = 0; i < k; ++i) {
                auto xp = theta;
                xp[i] = theta[i] + step[i];
                auto up = per_obs(xp);
                xp[i] = theta[i] - step[i];
                auto dn = per_obs(xp);
                scores[i].resize(n);
                for (std::size_t t = 0; t < n; ++t)
                    scores[i][t] = (up[t] - dn[t]) / (2.0 * step[i]);
            }
            std::vector<double> G(k * k, 0.0);
            for (std::size_t t = 0; t < n; ++t)
                for (std::size_t i = 0; i < k; ++i)
                    for (std::size_t j = 0; j < k; ++j) G[i * k + j] += scores[i][t] * scores[j][t];
            cov = detail::spd_inverse(G, k);
        }
        if (!cov.empty()) {
            model.std_errors.resize(theta.size());
            for (std::size_t i = 0; i < theta.size(); ++i)
                model.std_errors[i] = std::sqrt(std::max(0.0, cov[i * theta.size() + i]));
            model.std_errors[0] *= scale * scale;  // omega back to raw units
        }
    }

    // Map back to the raw residual scale and materialize the paths.
    model.params.omega *= scale * scale;
    double h0 = init_value(model.params, residuals, options.init);
    model.h = aligned_variance_path(model.params, residuals, h0);
    model.loglik = loglik_from_path(residuals, model.h, options.dist, model.shape);

    model.tail_z2.resize(static_cast<std::size_t>(p));
    for (int i = 0; i < p; ++i) {
        double zt = residuals[n - static_cast<std::size_t>(p - i)];
        model.tail_z2[static_cast<std::size_t>(i)] = zt * zt;
    }
    model.tail_h.assign(model.h.end() - q, model.h.end());
    return model;
}

std::vector<double> forecast_variance(const GarchModel& model, int horizon) {
    if (horizon < 1) throw usage_error("forecast_variance: horizon must be >= 1");
    if (!model.params.valid()) throw data_error("forecast_variance: invalid model");

    const int p = model.params.p(), q = model.params.q();
    if (model.tail_z2.size() < static_cast<std::size_t>(p) ||
        model.tail_h.size() < static_cast<std::size_t>(q))
        throw data_error("forecast_variance: model carries no end-of-sample state");
    std::vector<double> fc(static_cast<std::size_t>(horizon));
    for (int k = 1; k <= horizon; ++k) {
        double s = model.params.omega;
        for (int i = 1; i <= p; ++i) {
            int m = k - i;
            double z2;
            if (m >= 1)
                z2 = fc[static_cast<std::size_t>(m - 1)];  // E[Z^2] = h
            else {
                // observed squared residual Z^2_{T+m}; tail_z2 is newest-last
                int back = -m;  // 0 = newest
                z2 = model.tail_z2[model.tail_z2.size() - 1 - static_cast<std::size_t>(back)];
            }
            s += model.params.alpha[static_cast<std::size_t>(i - 1)] * z2;
        }
        for (int j = 1; j <= q; ++j) {
            int m = k - j;
            double hv;
            if (m >= 1)
                hv = fc[static_cast<std::size_t>(m - 1)];
            else {
                int back = -m;
                hv = model.tail_h[model.tail_h.size() - 1 - static_cast<std::size_t>(back)];
            }
            s += model.params.beta[static_cast<std::size_t>(j - 1)] * hv;
        }
        fc[static_cast<std::size_t>(k - 1)] = s;
    }
    return fc;
}

std::pair<std::vector<double>, std::vector<double>> simulate_garch(const GarchParams& params,
                                                                   std::size_t n,
                                                                   std::uint64_t seed,
                                                                   Innovation dist, double shape) {
    if (!params.valid()) throw data_error("simulate_garch: invalid parameters");
    if (n < 1) throw usage_error("simulate_garch: n must be >= 1");

    constexpr std::size_t burn = 500;
    const std::size_t total = n + burn;
    const int p = params.p(), q = params.q();
    const double h_init = params.unconditional_variance();

    std::mt19937_64 rng(seed);
    std::vector<double> zs(total), hs(total);
    for (std::size_t t = 0; t < total; ++t) {
        double s = params.omega;
        for (int i = 1; i <= p; ++i) {
            std::ptrdiff_t idx = static_cast<std::ptrdiff_t>(t) - i;
            double z2 = idx >= 0 ? zs[static_cast<std::size_t>(idx)] * zs[static_cast<std::size_t>(idx)]
                                 : h_init;
            s += params.alpha[static_cast<std::size_t>(i - 1)] * z2;
        }
        for (int j = 1; j <= q; ++j) {
            std::ptrdiff_t idx = static_cast<std::ptrdiff_t>(t) - j;
            s += params.beta[static_cast<std::size_t>(j - 1)] *
                 (idx >= 0 ? hs[static_cast<std::size_t>(idx)] : h_init);
        }
        hs[t] = s;
        zs[t] = std::sqrt(s) * sample_innovation(rng, dist, shape);
    }
    return {std::vector<double>(zs.begin() + burn, zs.end()),
            std::vector<double>(hs.begin() + burn, hs.end())};
}

std::vector<VolatilityCluster> detect_clusters(std::span<const double> h,
                                               double threshold_multiple) {
    if (h.empty()) throw data_error("detect_clusters: empty variance path");
    for (double v : h)
        if (!(v > 0.0)) throw data_error("detect_clusters: variance path must be positive");

    std::vector<double> sorted(h.begin(), h.end());
    std::sort(sorted.begin(), sorted.end());
    const std::size_t n = sorted.size();
    double median = n % 2 == 1 ? sorted[n / 2] : 0.5 * (sorted[n / 2 - 1] + sorted[n / 2]);
    double threshold = threshold_multiple * median;

    std::vector<VolatilityCluster> clusters;
    std::size_t t = 0;
    while (t < h.size()) {
        if (h[t] > threshold) {
            VolatilityCluster c{t, t, h[t]};
            while (c.end + 1 < h.size() && h[c.end + 1] > threshold) {
                ++c.end;
                c.peak_variance = std::max(c.peak_variance, h[c.end]);
            }
            clusters.push_back(c);
            t = c.end + 1;
        } else {
            ++t;
        }
    }
    return clusters;
}

}  // namespace voltcast
