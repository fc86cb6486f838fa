#include <algorithm>
#include <charconv>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <unistd.h>

#include "doctest.h"
#include "json.hpp"
#include "support/testutil.hpp"
#include "synthetic.hpp"
#include "voltcast/cli.hpp"
#include "voltcast/ingest.hpp"
#include "voltcast/memforecast.hpp"
#include "voltcast/model_io.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace voltcast;

namespace {

struct TempDir {
    fs::path path;
    TempDir() {
        path = fs::temp_directory_path() /
               ("voltcast-test-" + std::to_string(::getpid()) + "-" +
                std::to_string(counter()++));
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
    static int& counter() {
        static int c = 0;
        return c;
    }
    std::string file(const std::string& name) const { return (path / name).string(); }
};

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

json load_json(const std::string& path) { return json::parse(slurp(path)); }

}  // namespace

TEST_CASE("cli usage errors") {
    CHECK(cli::run({}) == 2);
    CHECK(cli::run({"frobnicate"}) == 2);
    CHECK(cli::run({"ingest"}) == 2);  // missing required options
    CHECK(cli::run({"--help"}) == 0);
}

TEST_CASE("cli missing input file") {
    TempDir dir;
    CHECK(cli::run({"ingest", "--input", dir.file("absent.csv"), "--out",
                    dir.file("monthly.csv")}) == 3);
    CHECK(cli::run({"diagnose", "--input", dir.file("absent.csv"), "--out",
                    dir.file("d.json")}) == 3);
}

TEST_CASE("cli full pipeline on synthetic data") {
    TempDir dir;
    synth::SynthConfig config;
    config.months = 16 * 12;
    synth::write_hourly_csv_file(dir.file("hourly.csv"), config);

    SUBCASE("ingest writes series and sidecar") {
        REQUIRE(cli::run({"ingest", "--input", dir.file("hourly.csv"), "--mode", "peak", "--out",
                          dir.file("monthly.csv")}) == 0);
        std::ifstream in(dir.file("monthly.csv"));
        auto monthly = read_monthly_csv(in);
        CHECK(monthly.size() == 192);
        CHECK(monthly.start == YearMonth{1993, 1});

        auto sidecar = load_json(dir.file("monthly.csv.json"));
        CHECK(sidecar.at("aggregation") == "peak");
        CHECK(sidecar.at("months") == 192);
        CHECK(sidecar.at("parse_report").at("rows_rejected") == 0);

        // different aggregation modes give different, valid outputs
        REQUIRE(cli::run({"ingest", "--input", dir.file("hourly.csv"), "--mode", "sum", "--out",
                          dir.file("monthly_sum.csv")}) == 0);
        std::ifstream in2(dir.file("monthly_sum.csv"));
        auto sums = read_monthly_csv(in2);
        REQUIRE(sums.size() == monthly.size());
        for (std::size_t i = 0; i < sums.size(); ++i) CHECK(sums.values[i] > monthly.values[i]);
    }

    SUBCASE("diagnose emits a full report") {
        REQUIRE(cli::run({"ingest", "--input", dir.file("hourly.csv"), "--out",
                          dir.file("monthly.csv")}) == 0);
        REQUIRE(cli::run({"diagnose", "--input", dir.file("monthly.csv"), "--max-lag", "24",
                          "--out", dir.file("diag.json")}) == 0);
        auto report = load_json(dir.file("diag.json"));
        CHECK(report.at("acf").at("raw").size() == 25);  // lag 0..24
        CHECK(report.at("pacf").at("raw").size() == 25);
        CHECK(report.at("stats").at("raw").at("n") == 192);
        CHECK(report.at("stats").at("log").contains("skewness"));
        CHECK(report.at("tests").at("adf_raw").contains("statistic"));
        CHECK(report.at("tests").at("jarque_bera_raw").at("p_value").is_number());
    }

    SUBCASE("fit, forecast, backtest chain") {
        REQUIRE(cli::run({"ingest", "--input", dir.file("hourly.csv"), "--out",
                          dir.file("monthly.csv")}) == 0);
        REQUIRE(cli::run({"fit", "--input", dir.file("monthly.csv"), "--train-end", "2007-12",
                          "--arima", "1,1,1", "--garch", "1,1", "--dist", "normal", "--out",
                          dir.file("model.json")}) == 0);

        auto doc = load_json(dir.file("model.json"));
        CHECK(doc.at("format") == "voltcast-model");
        CHECK(doc.at("version") == 1);
        CHECK(doc.at("arima").at("order") == json::array({1, 1, 1}));
        CHECK(doc.at("series").at("values").size() == 180);

        // model documents round-trip through the JSON layer
        auto model = mem_model_from_json(doc);
        auto direct = forecast_mem(model, 12);
        REQUIRE(cli::run({"forecast", "--model", dir.file("model.json"), "--horizon", "12",
                          "--out", dir.file("fc.csv")}) == 0);
        auto fc_csv = slurp(dir.file("fc.csv"));
        std::size_t lines = std::count(fc_csv.begin(), fc_csv.end(), '\n');
        CHECK(lines == 13);  // header + 12 rows
        CHECK(fc_csv.find("2008,1,") != std::string::npos);
        {
            std::istringstream ss(fc_csv);
            std::string header, first_row;
            std::getline(ss, header);
            std::getline(ss, first_row);
            CHECK(header == "year,month,point,lower,upper,variance");
            std::ostringstream expect;
            expect << "2008,1,";
            char buf[32];
            auto r = std::to_chars(buf, buf + sizeof buf, direct.point[0]);
            expect << std::string(buf, r.ptr);
            CHECK(first_row.substr(0, expect.str().size()) == expect.str());
        }

        REQUIRE(cli::run({"backtest", "--input", dir.file("monthly.csv"), "--split", "2007-12",
                          "--arima", "1,1,1", "--garch", "1,1", "--out",
                          dir.file("bt.json")}) == 0);
        auto bt = load_json(dir.file("bt.json"));
        CHECK(bt.at("train_size") == 180);
        CHECK(bt.at("months").size() == 12);
        CHECK(bt.at("parameters").size() == 6);

        // headline metrics are recomputable from the emitted series
        std::vector<double> actuals = bt.at("actuals").get<std::vector<double>>();
        std::vector<double> forecasts = bt.at("forecasts").get<std::vector<double>>();
        std::ifstream min(dir.file("monthly.csv"));
        auto monthly = read_monthly_csv(min);
        double prior = monthly.values[179];
        auto metrics = evaluate(actuals, forecasts, prior);
        CHECK(metrics.mape ==
              doctest::Approx(bt.at("metrics").at("mape_pct").get<double>()).epsilon(1e-12));
        CHECK(metrics.directional_accuracy ==
              doctest::Approx(
                  bt.at("metrics").at("directional_accuracy").get<double>()).epsilon(1e-12));

        // the CSV dump carries the same series
        auto bt_csv = slurp(dir.file("bt.csv"));
        CHECK(std::count(bt_csv.begin(), bt_csv.end(), '\n') == 13);
    }

    SUBCASE("repeated fits are byte identical") {
        REQUIRE(cli::run({"ingest", "--input", dir.file("hourly.csv"), "--out",
                          dir.file("monthly.csv")}) == 0);
        REQUIRE(cli::run({"fit", "--input", dir.file("monthly.csv"), "--out",
                          dir.file("m1.json")}) == 0);
        REQUIRE(cli::run({"fit", "--input", dir.file("monthly.csv"), "--out",
                          dir.file("m2.json")}) == 0);
        CHECK(slurp(dir.file("m1.json")) == slurp(dir.file("m2.json")));
    }
}

TEST_CASE("cli surfaces data errors with exit code 3") {
    TempDir dir;
    {
        std::ofstream out(dir.file("flat.csv"));
        out << "year,month,value\n";
        YearMonth ym{2000, 1};
        for (int i = 0; i < 60; ++i) {
            out << ym.year << ',' << ym.month << ",100\n";
            ym = ym.next();
        }
    }
    CHECK(cli::run({"diagnose", "--input", dir.file("flat.csv"), "--out",
                    dir.file("d.json")}) == 3);

    CHECK(cli::run({"fit", "--input", dir.file("flat.csv"), "--train-end", "2000-13", "--out",
                    dir.file("m.json")}) == 3);
}

TEST_CASE("cli rejects bad orders with exit code 2") {
    TempDir dir;
    {
        std::ofstream out(dir.file("m.csv"));
        out << "year,month,value\n2000,1,1\n2000,2,2\n";
    }
    CHECK(cli::run({"fit", "--input", dir.file("m.csv"), "--arima", "nope", "--out",
                    dir.file("x.json")}) == 2);
    CHECK(cli::run({"fit", "--input", dir.file("m.csv"), "--garch", "3", "--out",
                    dir.file("x.json")}) == 2);
    CHECK(cli::run({"fit", "--input", dir.file("m.csv"), "--transform", "sqrt", "--out",
                    dir.file("x.json")}) == 2);
}
