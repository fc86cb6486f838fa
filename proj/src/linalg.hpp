#pragma once

#include <cstddef>
#include <vector>

namespace voltcast::detail {

/// Dense column-major least squares via normal equations + Cholesky.
/// Small systems only (ADF regressions, a dozen columns at most).
struct OlsFit {
    std::vector<double> coef;
    std::vector<double> std_error;
    double sse = 0.0;
    std::size_t n = 0;
    std::size_t k = 0;
};

/// X is row-major n x k. Throws Error(data) when X'X is singular.
OlsFit ols(const std::vector<double>& X, const std::vector<double>& y, std::size_t n,
           std::size_t k);

/// In-place Cholesky solve of A x = b for symmetric positive definite A
/// (row-major k x k). Returns false if A is not positive definite.
bool cholesky_solve(std::vector<double> A, std::size_t k, std::vector<double>& b);

/// Inverse of a symmetric positive definite matrix, row-major. Returns empty
/// vector on failure.
std::vector<double> spd_inverse(std::vector<double> A, std::size_t k);

}  // namespace voltcast::detail
