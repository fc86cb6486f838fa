#include "voltcast/optimize.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "voltcast/error.hpp"

namespace voltcast {

namespace {

// Standard coefficients: reflection, expansion, contraction, shrink.
constexpr double kRho = 1.0;
constexpr double kChi = 2.0;
constexpr double kGamma = 0.5;
constexpr double kSigma = 0.5;

}  // namespace

SimplexResult nelder_mead(const std::function<double(const std::vector<double>&)>& objective,
                          std::vector<double> start, const SimplexOptions& options) {
    const std::size_t n = start.size();
    if (n == 0) throw usage_error("nelder_mead: empty start point");

    SimplexResult result;
    auto eval = [&](const std::vector<double>& x) {
        ++result.evaluations;
        double f = objective(x);
        return std::isnan(f) ? std::numeric_limits<double>::infinity() : f;
    };

    std::vector<std::vector<double>> simplex(n + 1, start);
    std::vector<double> fvals(n + 1);
    for (std::size_t i = 0; i < n; ++i) {
        double step = options.step.size() == 1 ? options.step[0]
                                               : options.step.at(i);
        if (step == 0.0) step = 1e-3;
        simplex[i + 1][i] += step;
    }
    for (std::size_t i = 0; i <= n; ++i) fvals[i] = eval(simplex[i]);

    std::vector<std::size_t> order(n + 1);
    auto sort_simplex = [&] {
        std::iota(order.begin(), order.end(), std::size_t{0});
        std::stable_sort(order.begin(), order.end(),
                         [&](std::size_t a, std::size_t b) { return fvals[a] < fvals[b]; });
    };

    std::vector<double> centroid(n), xr(n), xe(n), xc(n);
    for (int iter = 0; iter < options.max_iterations; ++iter) {
        sort_simplex();
        const auto& best = simplex[order[0]];
        const auto& worst = simplex[order[n]];

        // Domain convergence: simplex collapsed around the best vertex. The
        // relative objective spread is a secondary stop for surfaces with
        // exactly flat directions, where the simplex never collapses.
        double spread = 0.0;
        for (std::size_t i = 1; i <= n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                spread = std::max(spread, std::fabs(simplex[order[i]][j] - best[j]));
        double fspread = std::fabs(fvals[order[n]] - fvals[order[0]]);
        bool f_flat = std::isfinite(fvals[order[n]]) &&
                      fspread <= 1e-13 * (1.0 + std::fabs(fvals[order[0]]));
        if ((spread < options.x_tolerance && fspread < options.f_tolerance) || f_flat) {
            result.converged = true;
            result.iterations = iter;
            break;
        }

        for (std::size_t j = 0; j < n; ++j) {
            double s = 0.0;
            for (std::size_t i = 0; i < n; ++i) s += simplex[order[i]][j];
            centroid[j] = s / static_cast<double>(n);
        }

        for (std::size_t j = 0; j < n; ++j) xr[j] = centroid[j] + kRho * (centroid[j] - worst[j]);
        double fr = eval(xr);

        if (fr < fvals[order[0]]) {
            for (std::size_t j = 0; j < n; ++j)
                xe[j] = centroid[j] + kChi * kRho * (centroid[j] - worst[j]);
            double fe = eval(xe);
            if (fe < fr) {
                simplex[order[n]] = xe;
                fvals[order[n]] = fe;
            } else {
                simplex[order[n]] = xr;
                fvals[order[n]] = fr;
            }
        } else if (fr < fvals[order[n - 1]]) {
            simplex[order[n]] = xr;
            fvals[order[n]] = fr;
        } else {
            bool outside = fr < fvals[order[n]];
            const auto& toward = outside ? xr : worst;
            for (std::size_t j = 0; j < n; ++j)
                xc[j] = centroid[j] + kGamma * (toward[j] - centroid[j]);
            double fc = eval(xc);
            if (fc < std::min(fr, fvals[order[n]])) {
                simplex[order[n]] = xc;
                fvals[order[n]] = fc;
            } else {
                // Shrink toward the best vertex.
                for (std::size_t i = 1; i <= n; ++i) {
                    auto& v = simplex[order[i]];
                    for (std::size_t j = 0; j < n; ++j) v[j] = best[j] + kSigma * (v[j] - best[j]);
                    fvals[order[i]] = eval(v);
                }
            }
        }
        result.iterations = iter + 1;
    }

    sort_simplex();
    result.x = simplex[order[0]];
    result.fmin = fvals[order[0]];
    return result;
}

}  // namespace voltcast
