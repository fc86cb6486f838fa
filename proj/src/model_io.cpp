#include "voltcast/model_io.hpp"

#include <charconv>
#include <cmath>
#include <limits>
#include <ostream>

#include "voltcast/error.hpp"

namespace voltcast {

namespace {

using nlohmann::json;

void format_double(std::ostream& out, double v) {
    char buf[32];
    auto r = std::to_chars(buf, buf + sizeof buf, v);
    out.write(buf, r.ptr - buf);
}

json order_to_json(const ArimaOrder& order) { return json::array({order.p, order.d, order.q}); }

ArimaOrder order_from_json(const json& j) {
    return {j.at(0).get<int>(), j.at(1).get<int>(), j.at(2).get<int>()};
}

json series_to_json(const MonthlySeries& series) {
    return json{{"start", series.start.str()},
                {"aggregation", to_string(series.aggregation)},
                {"log", series.transform.log},
                {"diff", series.transform.diff},
                {"values", series.values}};
}

MonthlySeries series_from_json(const json& j) {
    MonthlySeries s;
    s.start = YearMonth::parse(j.at("start").get<std::string>());
    s.aggregation = aggregation_from_string(j.at("aggregation").get<std::string>());
    s.transform.log = j.at("log").get<bool>();
    s.transform.diff = j.at("diff").get<int>();
    s.values = j.at("values").get<std::vector<double>>();
    return s;
}

json config_to_json(const MemConfig& config) {
    return json{{"arima_order", order_to_json(config.arima_order)},
                {"garch_order", json::array({config.garch_p, config.garch_q})},
                {"dist", to_string(config.dist)},
                {"log", config.use_log},
                {"alpha", config.alpha},
                {"seed", config.seed}};
}

MemConfig config_from_json(const json& j) {
    MemConfig c;
    c.arima_order = order_from_json(j.at("arima_order"));
    c.garch_p = j.at("garch_order").at(0).get<int>();
    c.garch_q = j.at("garch_order").at(1).get<int>();
    c.dist = innovation_from_string(j.at("dist").get<std::string>());
    c.use_log = j.at("log").get<bool>();
    c.alpha = j.at("alpha").get<double>();
    c.seed = j.at("seed").get<std::uint64_t>();
    return c;
}

json arima_to_json(const ArimaModel& m) {
    return json{{"order", order_to_json(m.order)},
                {"has_intercept", m.has_intercept},
                {"intercept", m.intercept},
                {"ar", m.ar},
                {"ma", m.ma},
                {"sigma2", m.sigma2},
                {"loglik", m.loglik},
                {"std_errors", m.std_errors},
                {"residuals", m.residuals},
                {"log", m.transform.log},
                {"converged", m.converged}};
}

ArimaModel arima_from_json(const json& j) {
    ArimaModel m;
    m.order = order_from_json(j.at("order"));
    m.has_intercept = j.at("has_intercept").get<bool>();
    m.intercept = j.at("intercept").get<double>();
    m.ar = j.at("ar").get<std::vector<double>>();
    m.ma = j.at("ma").get<std::vector<double>>();
    m.sigma2 = j.at("sigma2").get<double>();
    m.loglik = j.at("loglik").get<double>();
    m.std_errors = j.at("std_errors").get<std::vector<double>>();
    m.residuals = j.at("residuals").get<std::vector<double>>();
    m.transform.log = j.at("log").get<bool>();
    m.transform.diff = m.order.d;
    m.converged = j.at("converged").get<bool>();
    return m;
}

json garch_to_json(const GarchModel& m) {
    json j{{"omega", m.params.omega},
           {"alpha", m.params.alpha},
           {"beta", m.params.beta},
           {"dist", to_string(m.dist)},
           {"loglik", m.loglik},
           {"std_errors", m.std_errors},
           {"h", m.h},
           {"tail_z2", m.tail_z2},
           {"tail_h", m.tail_h},
           {"converged", m.converged}};
    if (m.dist != Innovation::normal) j["shape"] = m.shape;
    return j;
}

GarchModel garch_from_json(const json& j) {
    GarchModel m;
    m.params.omega = j.at("omega").get<double>();
    m.params.alpha = j.at("alpha").get<std::vector<double>>();
    m.params.beta = j.at("beta").get<std::vector<double>>();
    m.dist = innovation_from_string(j.at("dist").get<std::string>());
    m.shape = j.contains("shape") ? j.at("shape").get<double>()
                                  : std::numeric_limits<double>::quiet_NaN();
    m.loglik = j.at("loglik").get<double>();
    m.std_errors = j.at("std_errors").get<std::vector<double>>();
    m.h = j.at("h").get<std::vector<double>>();
    m.tail_z2 = j.at("tail_z2").get<std::vector<double>>();
    m.tail_h = j.at("tail_h").get<std::vector<double>>();
    m.converged = j.at("converged").get<bool>();
    return m;
}

}  // namespace

json to_json(const SummaryStats& stats) {
    return json{{"n", stats.n},           {"mean", stats.mean},
                {"max", stats.max},       {"min", stats.min},
                {"median", stats.median}, {"std_dev", stats.std_dev},
                {"skewness", stats.skewness},
                {"kurtosis_raw", stats.kurtosis}};
}

json to_json(const TestResult& result) {
    json j{{"name", result.name},
           {"statistic", result.statistic},
           {"reject", result.reject},
           {"alpha", result.alpha},
           {"detail", result.detail}};
    if (result.p_value)
        j["p_value"] = *result.p_value;
    else
        j["p_value"] = nullptr;
    return j;
}

json to_json(std::span<const CorrelogramPoint> points) {
    json rows = json::array();
    for (const auto& pt : points)
        rows.push_back(json{{"lag", pt.lag}, {"value", pt.value}, {"band", pt.confidence_bound}});
    return rows;
}

json to_json(const ParseReport& report) {
    json rejects = json::array();
    for (const auto& r : report.rejects)
        rejects.push_back(json{{"line", r.line}, {"reason", r.reason}});
    return json{{"rows_read", report.rows_read},
                {"rows_rejected", report.rows_rejected},
                {"rejects", rejects}};
}

json to_json(const CleaningReport& report) {
    json dups = json::array();
    for (const auto& d : report.duplicates)
        dups.push_back(json{{"time", civil_from_hour_index(d.hour).str()}, {"count", d.count}});
    json gaps = json::array();
    for (const auto& g : report.gaps)
        gaps.push_back(json{{"start", civil_from_hour_index(g.start_hour).str()},
                            {"length_hours", g.length},
                            {"filled", g.filled}});
    return json{{"duplicates", dups},
                {"gaps", gaps},
                {"interpolated_records", report.interpolated_records}};
}

json to_json(const ParamStat& row) {
    return json{{"name", row.name},
                {"estimate", row.estimate},
                {"std_error", row.std_error},
                {"t_statistic", row.t_statistic},
                {"significant", row.significant}};
}

json mem_model_to_json(const MemModel& model) {
    return json{{"format", kModelFormat},
                {"version", kModelVersion},
                {"meta", json{{"tool", "voltcast"}, {"seed", model.config.seed}}},
                {"config", config_to_json(model.config)},
                {"series", series_to_json(model.fitted_series)},
                {"arima", arima_to_json(model.arima)},
                {"garch", garch_to_json(model.garch)}};
}

MemModel mem_model_from_json(const json& doc) {
    if (!doc.contains("format") || doc.at("format").get<std::string>() != kModelFormat)
        throw data_error("model document: unrecognized format");
    if (doc.at("version").get<int>() != kModelVersion)
        throw data_error("model document: unsupported version");
    MemModel m;
    m.config = config_from_json(doc.at("config"));
    m.fitted_series = series_from_json(doc.at("series"));
    m.arima = arima_from_json(doc.at("arima"));
    m.garch = garch_from_json(doc.at("garch"));
    return m;
}

json backtest_to_json(const BacktestReport& report) {
    json months = json::array();
    for (const auto& ym : report.months) months.push_back(ym.str());
    json params = json::array();
    for (const auto& row : report.params) params.push_back(to_json(row));
    return json{{"months", months},
                {"actuals", report.actuals},
                {"forecasts", report.forecasts},
                {"lower", report.lower},
                {"upper", report.upper},
                {"metrics",
                 json{{"mape_pct", report.metrics.mape},
                      {"mae", report.metrics.mae},
                      {"directional_accuracy", report.metrics.directional_accuracy}}},
                {"ci_coverage", report.ci_coverage},
                {"parameters", params},
                {"config", config_to_json(report.config)},
                {"train_end", report.train_end.str()},
                {"train_size", report.train_size}};
}

void write_forecast_csv(std::ostream& out, const ForecastResult& forecast) {
    out << "year,month,point,lower,upper,variance\n";
    for (std::size_t i = 0; i < forecast.point.size(); ++i) {
        const auto& ym = forecast.months[i];
        out << ym.year << ',' << ym.month << ',';
        format_double(out, forecast.point[i]);
        out << ',';
        format_double(out, forecast.lower[i]);
        out << ',';
        format_double(out, forecast.upper[i]);
        out << ',';
        format_double(out, forecast.variance[i]);
        out << '\n';
    }
}

void write_correlogram_csv(std::ostream& out, std::span<const CorrelogramPoint> points) {
    out << "lag,value,band\n";
    for (const auto& pt : points) {
        out << pt.lag << ',';
        format_double(out, pt.value);
        out << ',';
        format_double(out, pt.confidence_bound);
        out << '\n';
    }
}

void write_stats_csv(std::ostream& out,
                     std::span<const std::pair<std::string, SummaryStats>> rows) {
    out << "series,n,mean,max,min,median,std_dev,skewness,kurtosis_raw\n";
    for (const auto& [name, s] : rows) {
        out << name << ',' << s.n << ',';
        format_double(out, s.mean);
        out << ',';
        format_double(out, s.max);
        out << ',';
        format_double(out, s.min);
        out << ',';
        format_double(out, s.median);
        out << ',';
        format_double(out, s.std_dev);
        out << ',';
        format_double(out, s.skewness);
        out << ',';
        format_double(out, s.kurtosis);
        out << '\n';
    }
}

void write_backtest_csv(std::ostream& out, const BacktestReport& report) {
    out << "year,month,actual,forecast,lower,upper\n";
    for (std::size_t i = 0; i < report.actuals.size(); ++i) {
        const auto& ym = report.months[i];
        out << ym.year << ',' << ym.month << ',';
        format_double(out, report.actuals[i]);
        out << ',';
        format_double(out, report.forecasts[i]);
        out << ',';
        format_double(out, report.lower[i]);
        out << ',';
        format_double(out, report.upper[i]);
        out << '\n';
    }
}

}  // namespace voltcast
