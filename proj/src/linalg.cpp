#include "linalg.hpp"

#include <cmath>

#include "voltcast/error.hpp"

namespace voltcast::detail {

namespace {

// Lower-triangular Cholesky factor of A (row-major k x k), in place.
// Returns false when A is not positive definite.
bool cholesky(std::vector<double>& A, std::size_t k) {
    for (std::size_t i = 0; i < k; ++i) {
        for (std::size_t j = 0; j <= i; ++j) {
            double s = A[i * k + j];
            for (std::size_t m = 0; m < j; ++m) s -= A[i * k + m] * A[j * k + m];
            if (i == j) {
                if (s <= 0.0) return false;
                A[i * k + j] = std::sqrt(s);
            } else {
                A[i * k + j] = s / A[j * k + j];
            }
        }
    }
    return true;
}

void solve_lower(const std::vector<double>& L, std::size_t k, std::vector<double>& b) {
    for (std::size_t i = 0; i < k; ++i) {
        double s = b[i];
        for (std::size_t j = 0; j < i; ++j) s -= L[i * k + j] * b[j];
        b[i] = s / L[i * k + i];
    }
}

void solve_upper_from_lower(const std::vector<double>& L, std::size_t k, std::vector<double>& b) {
    for (std::size_t ii = k; ii-- > 0;) {
        double s = b[ii];
        for (std::size_t j = ii + 1; j < k; ++j) s -= L[j * k + ii] * b[j];
        b[ii] = s / L[ii * k + ii];
    }
}

}  // namespace

bool cholesky_solve(std::vector<double> A, std::size_t k, std::vector<double>& b) {
    if (!cholesky(A, k)) return false;
    solve_lower(A, k, b);
    solve_upper_from_lower(A, k, b);
    return true;
}

std::vector<double> spd_inverse(std::vector<double> A, std::size_t k) {
    if (!cholesky(A, k)) return {};
    std::vector<double> inv(k * k, 0.0);
    std::vector<double> e(k);
    for (std::size_t c = 0; c < k; ++c) {
        std::fill(e.begin(), e.end(), 0.0);
        e[c] = 1.0;
        solve_lower(A, k, e);
        solve_upper_from_lower(A, k, e);
        for (std::size_t r = 0; r < k; ++r) inv[r * k + c] = e[r];
    }
    return inv;
}

OlsFit ols(const std::vector<double>& X, const std::vector<double>& y, std::size_t n,
           std::size_t k) {
    if (n < k) throw data_error("ols: fewer observations than parameters");

    std::vector<double> xtx(k * k, 0.0);
    std::vector<double> xty(k, 0.0);
    for (std::size_t t = 0; t < n; ++t) {
        const double* row = &X[t * k];
        for (std::size_t i = 0; i < k; ++i) {
            xty[i] += row[i] * y[t];
            for (std::size_t j = 0; j <= i; ++j) xtx[i * k + j] += row[i] * row[j];
        }
    }
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = i + 1; j < k; ++j) xtx[i * k + j] = xtx[j * k + i];

    auto inv = spd_inverse(xtx, k);
    if (inv.empty()) throw data_error("ols: singular regression matrix");

    OlsFit fit;
    fit.n = n;
    fit.k = k;
    fit.coef.assign(k, 0.0);
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < k; ++j) fit.coef[i] += inv[i * k + j] * xty[j];

    fit.sse = 0.0;
    for (std::size_t t = 0; t < n; ++t) {
        double pred = 0.0;
        const double* row = &X[t * k];
        for (std::size_t i = 0; i < k; ++i) pred += row[i] * fit.coef[i];
        double r = y[t] - pred;
        fit.sse += r * r;
    }

    double s2 = n > k ? fit.sse / static_cast<double>(n - k) : 0.0;
    fit.std_error.assign(k, 0.0);
    for (std::size_t i = 0; i < k; ++i) fit.std_error[i] = std::sqrt(s2 * inv[i * k + i]);
    return fit;
}

}  // namespace voltcast::detail
