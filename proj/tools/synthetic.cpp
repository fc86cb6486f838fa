#include "synthetic.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numbers>

#include "voltcast/error.hpp"
#include "voltcast/ingest.hpp"
#include "voltcast/parallel.hpp"

namespace voltcast::synth {

namespace {

// Counter-based uniforms/gaussians so the fixture is reproducible across
// standard libraries.
double uniform_at(std::uint64_t base, std::uint64_t idx) {
    return static_cast<double>(parallel::stream_seed(base, idx) >> 11) / 9007199254740992.0;
}

double gauss_at(std::uint64_t base, std::uint64_t idx) {
    double u1 = std::max(uniform_at(base, 2 * idx), 1e-300);
    double u2 = uniform_at(base, 2 * idx + 1);
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

double sigmoid(double x) { return 1.0 / (1.0 + std::exp(-x)); }

// Calibrated monthly-peak model. Level in MW.
constexpr double kLevel0 = 134472.909351;
constexpr double kStep = 41338.895342;     // footprint-style level shift
constexpr double kStepCenter = 15.051641;  // years from start
constexpr double kStepWidth = 2.143935;
constexpr double kSlope = 495.779892;      // MW per year, organic growth
constexpr double kDip = 0.080951;          // recession depth
constexpr double kDipCenter = 15.9;
constexpr double kDipWidth = 1.2;
constexpr double kNoiseSd = 0.015103;      // log scale
constexpr double kNoiseBoost = 1.1;        // mid-2000s volatility burst
constexpr double kVolCenter = 13.5;
constexpr double kVolWidth = 2.0;
constexpr double kNoisePhi = 0.45;
constexpr double kHeatThreshold = 0.348066;
constexpr double kHeatGain = 0.095047;
constexpr double kSeasonal[12] = {1.0310, 0.9907, 0.9566, 0.9411, 0.9597, 1.0310,
                                  1.0930, 1.0806, 1.0031, 0.9442, 0.9659, 1.0279};

// Fraction of the daily peak by hour of day.
constexpr double kDiurnal[24] = {0.72, 0.68, 0.66, 0.65, 0.66, 0.70, 0.78, 0.85,
                                 0.90, 0.93, 0.95, 0.96, 0.97, 0.97, 0.98, 0.99,
                                 1.00, 1.00, 0.98, 0.95, 0.90, 0.85, 0.80, 0.75};

}  // namespace

std::vector<double> monthly_peaks(const SynthConfig& config) {
    if (config.months < 1) throw usage_error("synth: months must be >= 1");
    std::vector<double> vals(static_cast<std::size_t>(config.months));
    double g = 0.0;
    for (int t = 0; t < config.months; ++t) {
        int m = t % 12;
        double yf = t / 12.0;
        double trend = kLevel0 + kStep * sigmoid((yf - kStepCenter) / kStepWidth) + kSlope * yf;
        double dip = (yf - kDipCenter) / kDipWidth;
        trend *= 1.0 - kDip * std::exp(-0.5 * dip * dip);
        double vol = (yf - kVolCenter) / kVolWidth;
        double sd = kNoiseSd * (1.0 + kNoiseBoost * std::exp(-0.5 * vol * vol));
        g = kNoisePhi * g + sd * gauss_at(config.seed, static_cast<std::uint64_t>(t));
        double heat = 0.0;
        if (m == 5 || m == 6 || m == 7) {
            double x = gauss_at(config.seed ^ 0xABCDULL, static_cast<std::uint64_t>(t));
            if (x > kHeatThreshold) heat = kHeatGain * (x - kHeatThreshold);
        }
        vals[static_cast<std::size_t>(t)] = trend * kSeasonal[m] * std::exp(g + heat);
    }
    return vals;
}

HourlySeries hourly_series(const SynthConfig& config) {
    auto peaks = monthly_peaks(config);

    HourlySeries series;
    series.timezone = "synthetic-local";
    series.records.reserve(static_cast<std::size_t>(config.months) * 744);

    for (int t = 0; t < config.months; ++t) {
        int year = config.start_year + t / 12;
        int month = t % 12 + 1;
        int days = days_in_month(year, month);
        std::uint64_t stream = config.seed ^ (0x10000ULL + static_cast<std::uint64_t>(t));
        double phase = uniform_at(stream, 0) * 2.0 * std::numbers::pi;

        std::vector<double> raw(static_cast<std::size_t>(days) * 24);
        double raw_max = 0.0;
        std::size_t i = 0;
        for (int d = 1; d <= days; ++d) {
            std::int64_t day_idx = hour_index({year, month, d, 0}) / 24;
            bool weekend = (day_idx % 7 == 2) || (day_idx % 7 == 3);  // epoch day 0 is a Thursday
            double weather =
                1.0 + 0.03 * std::sin(2.0 * std::numbers::pi * d / 9.0 + phase);
            for (int h = 0; h < 24; ++h, ++i) {
                double noise =
                    1.0 + 0.015 * gauss_at(stream, 1 + static_cast<std::uint64_t>(i));
                double v = kDiurnal[h] * (weekend ? 0.90 : 1.0) * weather *
                           std::max(noise, 0.5);
                raw[i] = v;
                raw_max = std::max(raw_max, v);
            }
        }

        const double peak = peaks[static_cast<std::size_t>(t)];
        i = 0;
        for (int d = 1; d <= days; ++d)
            for (int h = 0; h < 24; ++h, ++i)
                series.records.push_back(
                    {hour_index({year, month, d, h}), peak * (raw[i] / raw_max)});
    }
    return series;
}

void write_hourly_csv_file(const std::string& path, const SynthConfig& config) {
    std::ofstream out(path);
    if (!out) throw data_error("synth: cannot open '" + path + "' for writing");
    write_hourly_csv(out, hourly_series(config));
    if (!out) throw data_error("synth: failed writing '" + path + "'");
}

}  // namespace voltcast::synth
