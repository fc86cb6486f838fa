#include "voltcast/cli.hpp"

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "voltcast/error.hpp"
#include "voltcast/model_io.hpp"

namespace voltcast::cli {

namespace {

enum class LogLevel { quiet = 0, info = 1, debug = 2 };

LogLevel log_level() {
    const char* env = std::getenv("VOLTCAST_LOG");
    if (!env) return LogLevel::info;
    std::string v(env);
    if (v == "quiet") return LogLevel::quiet;
    if (v == "debug") return LogLevel::debug;
    return LogLevel::info;
}

void log_info(const std::string& msg) {
    if (log_level() >= LogLevel::info) std::cerr << "voltcast: " << msg << '\n';
}

void log_debug(const std::string& msg) {
    if (log_level() >= LogLevel::debug) std::cerr << "voltcast[debug]: " << msg << '\n';
}

std::ifstream open_input(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw data_error("cannot open input file '" + path + "'");
    return in;
}

void write_text(const std::string& path, const std::string& content) {
    std::ofstream out(path);
    if (!out) throw data_error("cannot open output file '" + path + "'");
    out << content;
    if (!out) throw data_error("failed writing '" + path + "'");
}

std::string sibling_csv_path(const std::string& json_path) {
    std::filesystem::path p(json_path);
    if (p.extension() == ".json") p.replace_extension(".csv");
    else p += ".csv";
    return p.string();
}

MonthlySeries load_monthly(const std::string& path) {
    auto in = open_input(path);
    return read_monthly_csv(in);
}

void print_stats_row(std::ostream& os, const std::string& label, const SummaryStats& s) {
    char buf[256];
    std::snprintf(buf, sizeof buf,
                  "%-16s n=%zu mean=%.4f min=%.4f median=%.4f max=%.4f sd=%.4f skew=%.4f kurt=%.4f",
                  label.c_str(), s.n, s.mean, s.min, s.median, s.max, s.std_dev, s.skewness,
                  s.kurtosis);
    os << buf << '\n';
}

void print_test(std::ostream& os, const std::string& label, const TestResult& t) {
    char buf[256];
    if (t.p_value)
        std::snprintf(buf, sizeof buf, "%-24s stat=%.6f p=%.6g %s", label.c_str(), t.statistic,
                      *t.p_value, t.reject ? "reject H0" : "fail to reject H0");
    else
        std::snprintf(buf, sizeof buf, "%-24s stat=%.6f crit(5%%)=%.4f %s", label.c_str(),
                      t.statistic, t.detail.count("crit_5pct") ? t.detail.at("crit_5pct") : 0.0,
                      t.reject ? "reject H0" : "fail to reject H0");
    os << buf << '\n';
}

void print_param_table(std::ostream& os, const std::vector<ParamStat>& rows) {
    os << "parameter          estimate      std.error     t-stat\n";
    for (const auto& r : rows) {
        char buf[160];
        std::snprintf(buf, sizeof buf, "%-16s %12.6g %12.6g %10.4f%s", r.name.c_str(), r.estimate,
                      r.std_error, r.t_statistic, r.significant ? " *" : "");
        os << buf << '\n';
    }
    os << "(* |t| > 2, approximately significant at the 95% level)\n";
}

struct IngestArgs {
    std::string input, out;
    std::string mode = "peak";
    std::string ts_col = "timestamp", load_col = "load_mw";
    std::string delimiter = ",";
    std::string duplicates = "average";
    std::string timezone = "local";
    int max_gap = 6;
    bool allow_long_gaps = false;
};

int cmd_ingest(const IngestArgs& args) {
    ColumnSchema schema;
    schema.ts_col = args.ts_col;
    schema.load_col = args.load_col;
    if (args.delimiter.size() != 1) throw usage_error("--delimiter must be a single character");
    schema.delimiter = args.delimiter[0];
    schema.timezone = args.timezone;

    auto in = open_input(args.input);
    auto parsed = parse_hourly_csv(in, schema);
    log_info("parsed " + std::to_string(parsed.report.rows_read) + " rows, rejected " +
             std::to_string(parsed.report.rows_rejected));
    for (const auto& r : parsed.report.rejects)
        log_debug("rejected line " + std::to_string(r.line) + ": " + r.reason);

    CleaningPolicy policy;
    policy.duplicates = args.duplicates == "first" ? DuplicatePolicy::keep_first
                                                   : DuplicatePolicy::average;
    policy.max_gap_hours = args.max_gap;
    policy.allow_long_gaps = args.allow_long_gaps;
    auto cleaned = clean_series(parsed.series, policy);
    log_info("cleaning: " + std::to_string(cleaned.report.duplicates.size()) + " duplicate stamps, " +
             std::to_string(cleaned.report.gaps.size()) + " gaps, " +
             std::to_string(cleaned.report.interpolated_records) + " interpolated records");

    auto monthly = aggregate_monthly(cleaned.series, aggregation_from_string(args.mode));

    std::ostringstream csv;
    write_monthly_csv(csv, monthly);
    write_text(args.out, csv.str());

    nlohmann::json sidecar{{"aggregation", to_string(monthly.aggregation)},
                           {"timezone", cleaned.series.timezone},
                           {"months", monthly.size()},
                           {"start", monthly.start.str()},
                           {"end", monthly.last_month().str()},
                           {"parse_report", to_json(parsed.report)},
                           {"cleaning_report", to_json(cleaned.report)}};
    write_text(args.out + ".json", sidecar.dump(2) + "\n");

    std::cout << "wrote " << monthly.size() << " monthly " << to_string(monthly.aggregation)
              << " values (" << monthly.start.str() << ".." << monthly.last_month().str()
              << ") to " << args.out << '\n';
    return 0;
}

struct DiagnoseArgs {
    std::string input, out;
    std::string csv_dir;
    int max_lag = 24;
    double alpha = 0.05;
};

int cmd_diagnose(const DiagnoseArgs& args) {
    auto monthly = load_monthly(args.input);
    auto diffed = difference(monthly, 1);
    auto logged = log_transform(monthly);

    auto stats_raw = describe(monthly);
    auto stats_diff = describe(diffed);
    auto stats_log = describe(logged);

    auto acf_raw = acf(monthly.values, args.max_lag);
    auto acf_diff = acf(diffed.values, args.max_lag);
    auto acf_log = acf(logged.values, args.max_lag);
    auto pacf_raw = pacf(monthly.values, args.max_lag);

    AdfOptions adf_opts;
    adf_opts.alpha = args.alpha;
    auto adf_raw = adf_test(monthly.values, adf_opts);
    auto adf_diff = adf_test(diffed.values, adf_opts);
    auto jb_raw = jarque_bera(monthly.values, args.alpha);

    nlohmann::json report{
        {"stats", {{"raw", to_json(stats_raw)}, {"diff", to_json(stats_diff)},
                   {"log", to_json(stats_log)}}},
        {"acf", {{"raw", to_json(acf_raw)}, {"diff", to_json(acf_diff)}, {"log", to_json(acf_log)}}},
        {"pacf", {{"raw", to_json(pacf_raw)}}},
        {"tests", {{"adf_raw", to_json(adf_raw)}, {"adf_diff", to_json(adf_diff)},
                   {"jarque_bera_raw", to_json(jb_raw)}}},
        {"meta", {{"input", args.input}, {"max_lag", args.max_lag}, {"alpha", args.alpha}}}};
    write_text(args.out, report.dump(2) + "\n");

    if (!args.csv_dir.empty()) {
        std::filesystem::create_directories(args.csv_dir);
        auto dump = [&](const std::string& name, const auto& writer) {
            std::ostringstream ss;
            writer(ss);
            write_text((std::filesystem::path(args.csv_dir) / name).string(), ss.str());
        };
        std::vector<std::pair<std::string, SummaryStats>> stat_rows{
            {"raw", stats_raw}, {"diff", stats_diff}, {"log", stats_log}};
        dump("stats.csv", [&](std::ostream& os) { write_stats_csv(os, stat_rows); });
        dump("acf_raw.csv", [&](std::ostream& os) { write_correlogram_csv(os, acf_raw); });
        dump("acf_diff.csv", [&](std::ostream& os) { write_correlogram_csv(os, acf_diff); });
        dump("acf_log.csv", [&](std::ostream& os) { write_correlogram_csv(os, acf_log); });
        dump("pacf_raw.csv", [&](std::ostream& os) { write_correlogram_csv(os, pacf_raw); });
    }

    print_stats_row(std::cout, "load", stats_raw);
    print_stats_row(std::cout, "diff(load)", stats_diff);
    print_stats_row(std::cout, "log(load)", stats_log);
    print_test(std::cout, "ADF (level)", adf_raw);
    print_test(std::cout, "ADF (first diff)", adf_diff);
    print_test(std::cout, "Jarque-Bera (level)", jb_raw);
    std::cout << "report written to " << args.out << '\n';
    return 0;
}

struct FitArgs {
    std::string input, out;
    std::string train_end;
    std::string arima = "1,1,1";
    std::string garch = "1,1";
    std::string dist = "normal";
    std::string transform = "log";
    std::string select;  // "max_p,max_d,max_q" grid; overrides --arima
    std::string criterion = "aic";
    double alpha = 0.05;
    std::uint64_t seed = 42;
};

MemConfig config_from_args(const std::string& arima, const std::string& garch,
                           const std::string& dist, const std::string& transform, double alpha,
                           std::uint64_t seed) {
    MemConfig config;
    config.arima_order = ArimaOrder::parse(arima);
    {
        std::istringstream is(garch);
        char c = 0;
        if (!(is >> config.garch_p >> c >> config.garch_q) || c != ',' || config.garch_p < 0 ||
            config.garch_q < 0 || !(is >> std::ws).eof())
            throw usage_error("expected GARCH order as p,q, got '" + garch + "'");
    }
    config.dist = innovation_from_string(dist);
    if (transform == "raw")
        config.use_log = false;
    else if (transform == "log")
        config.use_log = true;
    else
        throw usage_error("--transform must be raw or log");
    if (!(alpha > 0.0 && alpha < 1.0)) throw usage_error("--alpha must be in (0,1)");
    config.alpha = alpha;
    config.seed = seed;
    return config;
}

int cmd_fit(const FitArgs& args) {
    auto monthly = load_monthly(args.input);
    auto config = config_from_args(args.arima, args.garch, args.dist, args.transform, args.alpha,
                                   args.seed);

    MonthlySeries train = monthly;
    if (!args.train_end.empty()) {
        auto split = split_train_test(monthly, YearMonth::parse(args.train_end));
        train = std::move(split.train);
        log_info("training on " + std::to_string(train.size()) + " points through " +
                 args.train_end);
    }

    auto model = fit_mem(train, config);
    write_text(args.out, mem_model_to_json(model).dump(2) + "\n");

    std::cout << "ARIMA" << config.arima_order.str() << " + GARCH(" << config.garch_p << ","
              << config.garch_q << ") fit on " << train.size() << " points; loglik arima="
              << model.arima.loglik << " garch=" << model.garch.loglik << '\n';
    print_param_table(std::cout, parameter_table(model));
    std::cout << "model written to " << args.out << '\n';
    return 0;
}

struct ForecastArgs {
    std::string model, out;
    int horizon = 12;
    double alpha = 0.05;
};

int cmd_forecast(const ForecastArgs& args) {
    auto in = open_input(args.model);
    nlohmann::json doc;
    try {
        in >> doc;
    } catch (const nlohmann::json::exception& e) {
        throw data_error(std::string("model document is not valid JSON: ") + e.what());
    }
    auto model = mem_model_from_json(doc);
    auto fc = forecast_mem(model, args.horizon, args.alpha);

    std::ostringstream csv;
    write_forecast_csv(csv, fc);
    write_text(args.out, csv.str());

    std::cout << "wrote " << fc.point.size() << "-step forecast ("
              << fc.months.front().str() << ".." << fc.months.back().str() << ") to " << args.out
              << '\n';
    return 0;
}

struct BacktestArgs {
    std::string input, out;
    std::string split;
    std::string arima = "1,1,1";
    std::string garch = "1,1";
    std::string dist = "normal";
    std::string transform = "log";
    double alpha = 0.05;
    std::uint64_t seed = 42;
};

int cmd_backtest(const BacktestArgs& args) {
    auto monthly = load_monthly(args.input);
    auto config = config_from_args(args.arima, args.garch, args.dist, args.transform, args.alpha,
                                   args.seed);
    auto report = run_experiment(monthly, YearMonth::parse(args.split), config);

    write_text(args.out, backtest_to_json(report).dump(2) + "\n");
    std::ostringstream csv;
    write_backtest_csv(csv, report);
    const std::string csv_path = sibling_csv_path(args.out);
    write_text(csv_path, csv.str());

    char buf[200];
    std::snprintf(buf, sizeof buf,
                  "backtest %s..%s: MAPE=%.4f%% MAE=%.4f DA=%.4f CI coverage=%.4f",
                  report.months.front().str().c_str(), report.months.back().str().c_str(),
                  report.metrics.mape, report.metrics.mae, report.metrics.directional_accuracy,
                  report.ci_coverage);
    std::cout << buf << '\n';
    print_param_table(std::cout, report.params);
    std::cout << "report written to " << args.out << " (series dump: " << csv_path << ")\n";
    return 0;
}

}  // namespace

int run(const std::vector<std::string>& args) {
    CLI::App app{"voltcast: monthly electric-load forecasting with ARIMA-GARCH errors"};
    app.require_subcommand(1);

    IngestArgs ingest_args;
    auto* ingest = app.add_subcommand("ingest", "aggregate hourly load data to a monthly series");
    ingest->add_option("--input", ingest_args.input, "hourly CSV file")->required();
    ingest->add_option("--out", ingest_args.out, "monthly CSV output path")->required();
    ingest->add_option("--mode", ingest_args.mode, "aggregation: peak|min|sum|mean");
    ingest->add_option("--ts-col", ingest_args.ts_col, "timestamp column name");
    ingest->add_option("--load-col", ingest_args.load_col, "load column name");
    ingest->add_option("--delimiter", ingest_args.delimiter, "field delimiter");
    ingest->add_option("--duplicates", ingest_args.duplicates, "duplicate policy: first|average");
    ingest->add_option("--max-gap", ingest_args.max_gap, "max gap (hours) to interpolate");
    ingest->add_flag("--allow-long-gaps", ingest_args.allow_long_gaps,
                     "do not fail on gaps longer than one month");
    ingest->add_option("--tz", ingest_args.timezone, "timezone label for the series");

    DiagnoseArgs diag_args;
    auto* diagnose = app.add_subcommand("diagnose", "summary statistics, correlograms and tests");
    diagnose->add_option("--input", diag_args.input, "monthly CSV file")->required();
    diagnose->add_option("--out", diag_args.out, "JSON report path")->required();
    diagnose->add_option("--max-lag", diag_args.max_lag, "correlogram depth");
    diagnose->add_option("--alpha", diag_args.alpha, "significance level");

    FitArgs fit_args;
    auto* fit = app.add_subcommand("fit", "fit the two-stage mean/variance model");
    fit->add_option("--input", fit_args.input, "monthly CSV file")->required();
    fit->add_option("--out", fit_args.out, "model JSON path")->required();
    fit->add_option("--train-end", fit_args.train_end, "fit only through YYYY-MM");
    fit->add_option("--arima", fit_args.arima, "ARIMA order p,d,q");
    fit->add_option("--garch", fit_args.garch, "GARCH order p,q");
    fit->add_option("--dist", fit_args.dist, "innovations: normal|student_t|gamma");
    fit->add_option("--transform", fit_args.transform, "raw|log");
    fit->add_option("--alpha", fit_args.alpha, "CI level stored with the model");
    fit->add_option("--seed", fit_args.seed, "seed echoed in reports");

    ForecastArgs fc_args;
    auto* forecast = app.add_subcommand("forecast", "confidence-banded forecasts from a model file");
    forecast->add_option("--model", fc_args.model, "model JSON from `fit`")->required();
    forecast->add_option("--out", fc_args.out, "forecast CSV path")->required();
    forecast->add_option("--horizon", fc_args.horizon, "months ahead");
    forecast->add_option("--alpha", fc_args.alpha, "CI level");

    BacktestArgs bt_args;
    auto* backtest = app.add_subcommand("backtest", "train/test split experiment with metrics");
    backtest->add_option("--input", bt_args.input, "monthly CSV file")->required();
    backtest->add_option("--out", bt_args.out, "JSON report path")->required();
    backtest->add_option("--split", bt_args.split, "train end YYYY-MM")->required();
    backtest->add_option("--arima", bt_args.arima, "ARIMA order p,d,q");
    backtest->add_option("--garch", bt_args.garch, "GARCH order p,q");
    backtest->add_option("--dist", bt_args.dist, "innovations: normal|student_t|gamma");
    backtest->add_option("--transform", bt_args.transform, "raw|log");
    backtest->add_option("--alpha", bt_args.alpha, "CI level");
    backtest->add_option("--seed", bt_args.seed, "seed echoed in reports");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp& e) {
        std::cout << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        std::cerr << "voltcast: " << e.what() << '\n';
        return 2;
    }

    try {
        if (ingest->parsed()) return cmd_ingest(ingest_args);
        if (diagnose->parsed()) return cmd_diagnose(diag_args);
        if (fit->parsed()) return cmd_fit(fit_args);
        if (forecast->parsed()) return cmd_forecast(fc_args);
        if (backtest->parsed()) return cmd_backtest(bt_args);
        std::cerr << "voltcast: no subcommand\n";
        return 2;
    } catch (const Error& e) {
        std::cerr << "voltcast: error: " << e.what() << '\n';
        switch (e.kind()) {
            case ErrorKind::usage: return 2;
            case ErrorKind::data: return 3;
            case ErrorKind::convergence: return 4;
        }
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "voltcast: unexpected error: " << e.what() << '\n';
        return 3;
    }
}

}  // namespace voltcast::cli
