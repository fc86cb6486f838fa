#pragma once

#include <functional>
#include <vector>

namespace voltcast {

struct SimplexResult {
    std::vector<double> x;
    double fmin = 0.0;
    int iterations = 0;
    int evaluations = 0;
    bool converged = false;
};

struct SimplexOptions {
    int max_iterations = 5000;
    /// Terminate when every vertex is within this distance of the best, per
    /// coordinate (domain convergence).
    double x_tolerance = 1e-8;
    double f_tolerance = 1e-12;
    /// Initial displacement per coordinate; broadcast if a single entry.
    std::vector<double> step{0.1};
};

/// Derivative-free Nelder-Mead simplex minimization. The objective may return
/// +inf to reject a point (used by penalized likelihoods).
SimplexResult nelder_mead(const std::function<double(const std::vector<double>&)>& objective,
                          std::vector<double> start, const SimplexOptions& options = {});

}  // namespace voltcast
