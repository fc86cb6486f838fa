#include "voltcast/series_ops.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "voltcast/error.hpp"

namespace voltcast {

MonthlySeries difference(const MonthlySeries& series, int d) {
    if (d < 1) throw usage_error("difference: d must be >= 1");
    if (series.size() <= static_cast<std::size_t>(d))
        throw data_error("difference: series length " + std::to_string(series.size()) +
                         " is too short for d=" + std::to_string(d));

    MonthlySeries out = series;
    for (int pass = 0; pass < d; ++pass) {
        out.transform.diff_initial.push_back(out.values.front());
        std::vector<double> next(out.values.size() - 1);
        for (std::size_t i = 0; i + 1 < out.values.size(); ++i)
            next[i] = out.values[i + 1] - out.values[i];
        out.values = std::move(next);
        out.start = out.start.next();
    }
    out.transform.diff += d;
    return out;
}

MonthlySeries integrate(const MonthlySeries& diffed, std::span<const double> initial_values) {
    const int d = static_cast<int>(initial_values.size());
    if (d < 1) throw usage_error("integrate: need at least one initial value");
    if (diffed.transform.diff > 0 && diffed.transform.diff != d)
        throw usage_error("integrate: lineage records d=" + std::to_string(diffed.transform.diff) +
                          " but " + std::to_string(d) + " initial values were given");

    MonthlySeries out = diffed;
    for (int pass = d - 1; pass >= 0; --pass) {
        std::vector<double> next(out.values.size() + 1);
        next[0] = initial_values[pass];
        for (std::size_t i = 0; i < out.values.size(); ++i) next[i + 1] = next[i] + out.values[i];
        out.values = std::move(next);
        out.start = out.start.prev();
    }
    out.transform.diff = std::max(0, out.transform.diff - d);
    if (out.transform.diff_initial.size() >= static_cast<std::size_t>(d))
        out.transform.diff_initial.resize(out.transform.diff_initial.size() - d);
    return out;
}

MonthlySeries log_transform(const MonthlySeries& series) {
    MonthlySeries out = series;
    for (std::size_t i = 0; i < out.values.size(); ++i) {
        if (!(out.values[i] > 0.0))
            throw data_error("log_transform: value at index " + std::to_string(i) +
                             " (" + series.month_at(i).str() + ") is not positive");
        out.values[i] = std::log(out.values[i]);
    }
    out.transform.log = true;
    return out;
}

MonthlySeries exp_transform(const MonthlySeries& series) {
    MonthlySeries out = series;
    for (auto& v : out.values) v = std::exp(v);
    out.transform.log = false;
    return out;
}

SummaryStats describe(std::span<const double> values) {
    const std::size_t n = values.size();
    if (n < 2) throw data_error("describe: need at least 2 observations");

    SummaryStats s;
    s.n = n;
    double sum = 0.0;
    for (double v : values) sum += v;
    s.mean = sum / static_cast<double>(n);

    std::vector<double> sorted(values.begin(), values.end());
    std::sort(sorted.begin(), sorted.end());
    s.min = sorted.front();
    s.max = sorted.back();
    s.median = n % 2 == 1 ? sorted[n / 2] : 0.5 * (sorted[n / 2 - 1] + sorted[n / 2]);

    double m2 = 0.0, m3 = 0.0, m4 = 0.0;
    for (double v : values) {
        double c = v - s.mean;
        double c2 = c * c;
        m2 += c2;
        m3 += c2 * c;
        m4 += c2 * c2;
    }
    s.std_dev = std::sqrt(m2 / static_cast<double>(n - 1));
    m2 /= static_cast<double>(n);
    m3 /= static_cast<double>(n);
    m4 /= static_cast<double>(n);
    if (m2 <= 0.0) throw data_error("describe: zero variance");
    s.skewness = m3 / std::pow(m2, 1.5);
    s.kurtosis = m4 / (m2 * m2);
    return s;
}

SummaryStats describe(const MonthlySeries& series) { return describe(series.values); }

namespace {

std::vector<double> autocorrelations(std::span<const double> x, int max_lag) {
    const std::size_t n = x.size();
    if (max_lag < 0) throw usage_error("acf: max_lag must be >= 0");
    if (static_cast<std::size_t>(max_lag) >= n)
        throw data_error("acf: max_lag must be smaller than the series length");

    auto [lo, hi] = std::minmax_element(x.begin(), x.end());
    if (*lo == *hi) throw data_error("acf: constant series has no autocorrelation");

    double mean = 0.0;
    for (double v : x) mean += v;
    mean /= static_cast<double>(n);

    double c0 = 0.0;
    for (double v : x) c0 += (v - mean) * (v - mean);
    if (c0 <= 0.0) throw data_error("acf: constant series has no autocorrelation");

    std::vector<double> r(max_lag + 1);
    r[0] = 1.0;
    for (int k = 1; k <= max_lag; ++k) {
        double ck = 0.0;
        for (std::size_t t = 0; t + k < n; ++t) ck += (x[t] - mean) * (x[t + k] - mean);
        r[k] = ck / c0;
    }
    return r;
}

}  // namespace

std::vector<CorrelogramPoint> acf(std::span<const double> values, int max_lag) {
    auto r = autocorrelations(values, max_lag);
    double band = 1.96 / std::sqrt(static_cast<double>(values.size()));
    std::vector<CorrelogramPoint> out(r.size());
    for (std::size_t k = 0; k < r.size(); ++k)
        out[k] = {static_cast<int>(k), r[k], band};
    return out;
}

std::vector<CorrelogramPoint> pacf(std::span<const double> values, int max_lag) {
    auto r = autocorrelations(values, max_lag);
    double band = 1.96 / std::sqrt(static_cast<double>(values.size()));

    std::vector<CorrelogramPoint> out;
    out.reserve(max_lag + 1);
    out.push_back({0, 1.0, band});

    // Durbin-Levinson: phi[k][k] is the lag-k partial autocorrelation.
    std::vector<double> phi_prev(max_lag + 1, 0.0), phi(max_lag + 1, 0.0);
    double v = 1.0;
    for (int k = 1; k <= max_lag; ++k) {
        double num = r[k];
        for (int j = 1; j < k; ++j) num -= phi_prev[j] * r[k - j];
        if (v <= 0.0) throw data_error("pacf: Durbin-Levinson variance collapsed to zero");
        double pk = num / v;
        phi[k] = pk;
        for (int j = 1; j < k; ++j) phi[j] = phi_prev[j] - pk * phi_prev[k - j];
        v *= (1.0 - pk * pk);
        phi_prev = phi;
        out.push_back({k, pk, band});
    }
    return out;
}

SplitSpec split_train_test(const MonthlySeries& series, YearMonth train_end) {
    if (series.size() < 2) throw data_error("split: series too short to split");
    const YearMonth first = series.start;
    const YearMonth last = series.last_month();
    if (train_end < first || !(train_end < last))
        throw data_error("split: train_end " + train_end.str() +
                         " must lie strictly inside " + first.str() + ".." + last.str());

    const auto cut = static_cast<std::size_t>(train_end.months_since(first)) + 1;
    SplitSpec spec;
    spec.train_end = train_end;
    spec.train = series;
    spec.train.values.assign(series.values.begin(), series.values.begin() + cut);
    spec.test = series;
    spec.test.start = train_end.next();
    spec.test.values.assign(series.values.begin() + cut, series.values.end());
    return spec;
}

}  // namespace voltcast
