// Serial vs OpenMP timing for the replication-parallel workloads. Both
// execution policies must agree bit-for-bit; this binary reports the speedup.
#include <chrono>
#include <cstdio>
#include <random>
#include <vector>

#include "voltcast/arima.hpp"
#include "voltcast/garch.hpp"
#include "voltcast/parallel.hpp"
#include "voltcast/series_ops.hpp"
#include "voltcast/stattests.hpp"

namespace vc = voltcast;
using vc::parallel::Exec;

namespace {

double seconds_since(std::chrono::steady_clock::time_point start) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

std::vector<double> random_walk(std::uint64_t seed, std::size_t n) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> normal(0.0, 1.0);
    std::vector<double> y(n);
    double acc = 0.0;
    for (auto& v : y) {
        acc += normal(rng);
        v = acc;
    }
    return y;
}

struct Workload {
    const char* name;
    std::size_t reps;
    double (*run)(Exec);
};

double adf_size_study(Exec exec) {
    constexpr std::size_t reps = 2000;
    vc::AdfOptions options;
    options.lags = 4;
    auto hits = vc::parallel::count_indexed(
        reps,
        [&](std::size_t i) {
            auto y = random_walk(vc::parallel::stream_seed(7001, i), 300);
            return vc::adf_test(y, options).reject;
        },
        exec);
    return static_cast<double>(hits) / reps;
}

double garch_recovery_study(Exec exec) {
    constexpr std::size_t reps = 60;
    vc::GarchParams truth{0.1, {0.1}, {0.8}};
    auto errs = vc::parallel::map_indexed<double>(
        reps,
        [&](std::size_t i) {
            auto [z, h] = vc::simulate_garch(truth, 3000, vc::parallel::stream_seed(7002, i));
            auto model = vc::fit_garch(z, 1, 1);
            return std::fabs(model.params.alpha[0] - 0.1) + std::fabs(model.params.beta[0] - 0.8);
        },
        exec);
    double s = 0.0;
    for (double e : errs) s += e;
    return s / static_cast<double>(reps);
}

double batch_acf_study(Exec exec) {
    constexpr std::size_t reps = 400;
    auto lag1 = vc::parallel::map_indexed<double>(
        reps,
        [&](std::size_t i) {
            auto y = random_walk(vc::parallel::stream_seed(7003, i), 20000);
            return vc::acf(y, 48)[1].value;
        },
        exec);
    double s = 0.0;
    for (double v : lag1) s += v;
    return s / static_cast<double>(reps);
}

}  // namespace

int main() {
    std::printf("openmp available: %s (max threads %d)\n\n",
                vc::parallel::openmp_available() ? "yes" : "no", vc::parallel::max_threads());
    std::printf("%-24s %12s %12s %9s  %s\n", "workload", "serial [s]", "openmp [s]", "speedup",
                "agree");

    const Workload workloads[] = {
        {"adf size (2000 reps)", 2000, adf_size_study},
        {"garch recovery (60 fits)", 60, garch_recovery_study},
        {"batch acf (400 series)", 400, batch_acf_study},
    };

    for (const auto& w : workloads) {
        auto t0 = std::chrono::steady_clock::now();
        double serial = w.run(Exec::serial);
        double ts = seconds_since(t0);

        t0 = std::chrono::steady_clock::now();
        double parallel = w.run(Exec::openmp);
        double tp = seconds_since(t0);

        std::printf("%-24s %12.3f %12.3f %8.2fx  %s\n", w.name, ts, tp, ts / tp,
                    serial == parallel ? "yes" : "NO");
    }
    return 0;
}
