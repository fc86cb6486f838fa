#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#if defined(_OPENMP)
#include <omp.h>
#endif

namespace voltcast::parallel {

/// Execution policy for replication fan-out. `serial` is the reference
/// implementation; `openmp` distributes iterations across threads. Both must
/// produce identical results for any kernel that depends only on its index.
enum class Exec { serial, openmp };

inline bool openmp_available() {
#if defined(_OPENMP)
    return true;
#else
    return false;
#endif
}

inline int max_threads() {
#if defined(_OPENMP)
    return omp_get_max_threads();
#else
    return 1;
#endif
}

/// Derives an independent RNG seed for stream `index` from `base`.
/// splitmix64 finalizer; avalanches so adjacent indices give unrelated streams.
inline std::uint64_t stream_seed(std::uint64_t base, std::uint64_t index) {
    std::uint64_t z = base + 0x9e3779b97f4a7c15ULL * (index + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

/// Evaluates `fn(i)` for i in [0, n) and collects the results in index order.
/// The kernel must be a pure function of its index (seed its own RNG via
/// stream_seed), which makes the two execution policies bit-identical.
template <typename T, typename Fn>
std::vector<T> map_indexed(std::size_t n, Fn&& fn, Exec exec = Exec::serial) {
    std::vector<T> out(n);
    if (exec == Exec::openmp) {
#if defined(_OPENMP)
#pragma omp parallel for schedule(dynamic)
        for (std::int64_t i = 0; i < static_cast<std::int64_t>(n); ++i)
            out[static_cast<std::size_t>(i)] = fn(static_cast<std::size_t>(i));
        return out;
#endif
    }
    for (std::size_t i = 0; i < n; ++i) out[i] = fn(i);
    return out;
}

/// Counts indices in [0, n) for which `pred(i)` is true. Used by the
/// Monte-Carlo calibration harnesses (rejection-rate estimates).
template <typename Pred>
std::size_t count_indexed(std::size_t n, Pred&& pred, Exec exec = Exec::serial) {
    if (exec == Exec::openmp) {
#if defined(_OPENMP)
        std::int64_t hits = 0;
#pragma omp parallel for schedule(dynamic) reduction(+ : hits)
        for (std::int64_t i = 0; i < static_cast<std::int64_t>(n); ++i)
            hits += pred(static_cast<std::size_t>(i)) ? 1 : 0;
        return static_cast<std::size_t>(hits);
#endif
    }
    std::size_t hits = 0;
    for (std::size_t i = 0; i < n; ++i)
        if (pred(i)) ++hits;
    return hits;
}

}  // namespace voltcast::parallel
