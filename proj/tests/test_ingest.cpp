#include <random>
#include <sstream>

#include "doctest.h"
#include "support/testutil.hpp"
#include "voltcast/error.hpp"
#include "voltcast/ingest.hpp"

using namespace voltcast;

namespace {

HourlySeries hours_from(int year, int month, int day, int start_hour,
                        const std::vector<double>& loads) {
    HourlySeries s;
    std::int64_t base = hour_index({year, month, day, start_hour});
    for (std::size_t i = 0; i < loads.size(); ++i)
        s.records.push_back({base + static_cast<std::int64_t>(i), loads[i]});
    return s;
}

}  // namespace

TEST_CASE("civil time round trip") {
    CHECK(hour_index({1970, 1, 1, 0}) == 0);
    CHECK(hour_index({1970, 1, 2, 0}) == 24);
    std::mt19937_64 rng(1);
    std::uniform_int_distribution<std::int64_t> hours(-400000, 900000);
    for (int i = 0; i < 2000; ++i) {
        std::int64_t h = hours(rng);
        CHECK(hour_index(civil_from_hour_index(h)) == h);
    }
    CHECK(days_in_month(2016, 2) == 29);
    CHECK(days_in_month(1900, 2) == 28);
    CHECK(days_in_month(2000, 2) == 29);
}

TEST_CASE("year-month arithmetic and parsing") {
    YearMonth ym{2015, 12};
    CHECK(ym.next() == YearMonth{2016, 1});
    CHECK(ym.prev() == YearMonth{2015, 11});
    CHECK(ym.plus(13) == YearMonth{2017, 1});
    CHECK(ym.plus(-12) == YearMonth{2014, 12});
    CHECK(YearMonth{2016, 1}.months_since({1993, 1}) == 276);
    CHECK(YearMonth::parse("1993-07") == YearMonth{1993, 7});
    CHECK(YearMonth::parse("2008-12").str() == "2008-12");
    CHECK_THROWS_AS(YearMonth::parse("1993-13"), Error);
    CHECK_THROWS_AS(YearMonth::parse("199307"), Error);
}

TEST_CASE("parse_hourly_csv minimal") {
    std::istringstream in(
        "timestamp,load_mw\n"
        "1993-01-01 00:00,100.5\n"
        "1993-01-01 01:00,101.25\n");
    auto result = parse_hourly_csv(in);
    REQUIRE(result.series.size() == 2);
    CHECK(result.series.records[0].load_mw == 100.5);
    CHECK(result.series.records[1].hour == result.series.records[0].hour + 1);
    CHECK(result.report.rows_read == 2);
    CHECK(result.report.rows_rejected == 0);
}

TEST_CASE("parse_hourly_csv rejects bad rows with line numbers") {
    std::istringstream in(
        "timestamp,load_mw\n"
        "1993-01-01 00:00,100\n"
        "1993-01-01 01:00,abc\n"
        "1993-01-01 02:00,101\n"
        "1993-01-01 02:30,102\n"
        "not-a-time,103\n"
        "1993-01-01 04:00,-5\n");
    auto result = parse_hourly_csv(in);
    CHECK(result.series.size() == 2);
    REQUIRE(result.report.rows_rejected == 4);
    CHECK(result.report.rejects[0].line == 3);  // "abc"
    CHECK(result.report.rejects[1].line == 5);  // half-hour stamp
    CHECK(result.report.rejects[2].line == 6);  // bad timestamp
    CHECK(result.report.rejects[3].line == 7);  // nonpositive load
}

TEST_CASE("parse_hourly_csv fatal cases") {
    std::istringstream empty("");
    CHECK_THROWS_AS(parse_hourly_csv(empty), Error);

    std::istringstream only_header("timestamp,load_mw\n");
    CHECK_THROWS_AS(parse_hourly_csv(only_header), Error);

    std::istringstream wrong_cols("time,value\n1993-01-01 00:00,1\n");
    CHECK_THROWS_AS(parse_hourly_csv(wrong_cols), Error);
}

TEST_CASE("parse_hourly_csv custom schema") {
    std::istringstream in("when;mw\n2001-06-01T05:00;432.1\n");
    ColumnSchema schema;
    schema.ts_col = "when";
    schema.load_col = "mw";
    schema.delimiter = ';';
    auto result = parse_hourly_csv(in, schema);
    REQUIRE(result.series.size() == 1);
    CHECK(result.series.records[0].civil().hour == 5);
}

TEST_CASE("clean_series resolves duplicates") {
    auto s = hours_from(2001, 10, 28, 0, {10, 20, 30});
    s.records.insert(s.records.begin() + 1, {s.records[1].hour, 40.0});  // duplicate hour 1

    CleaningPolicy average;
    auto cleaned = clean_series(s, average);
    REQUIRE(cleaned.series.size() == 3);
    CHECK(cleaned.series.records[1].load_mw == doctest::Approx(30.0));  // (20+40)/2
    REQUIRE(cleaned.report.duplicates.size() == 1);
    CHECK(cleaned.report.duplicates[0].count == 2);

    CleaningPolicy first;
    first.duplicates = DuplicatePolicy::keep_first;
    auto kept = clean_series(s, first);
    CHECK(kept.series.records[1].load_mw == 40.0);  // file order: 40 precedes 20
}

TEST_CASE("clean_series interpolates short gaps and reports long ones") {
    HourlySeries s = hours_from(2002, 3, 1, 0, {10.0});
    s.records.push_back({s.records[0].hour + 4, 18.0});   // 3 missing hours
    s.records.push_back({s.records[1].hour + 10, 20.0});  // 9 missing hours

    CleaningPolicy policy;
    policy.max_gap_hours = 6;
    auto cleaned = clean_series(s, policy);
    REQUIRE(cleaned.report.gaps.size() == 2);
    CHECK(cleaned.report.gaps[0].filled);
    CHECK(cleaned.report.gaps[0].length == 3);
    CHECK_FALSE(cleaned.report.gaps[1].filled);
    CHECK(cleaned.report.interpolated_records == 3);
    REQUIRE(cleaned.series.size() == 2 + 3 + 1);
    // Linear fill between 10 and 18
    CHECK(cleaned.series.records[1].load_mw == doctest::Approx(12.0));
    CHECK(cleaned.series.records[2].load_mw == doctest::Approx(14.0));
    CHECK(cleaned.series.records[3].load_mw == doctest::Approx(16.0));
}

TEST_CASE("clean_series DST-style duplicated autumn hour") {
    // 2004-10-31: clocks repeat 01:00; archive carries the hour twice.
    HourlySeries s;
    std::int64_t base = hour_index({2004, 10, 31, 0});
    s.records.push_back({base + 0, 100.0});
    s.records.push_back({base + 1, 110.0});
    s.records.push_back({base + 1, 90.0});
    s.records.push_back({base + 2, 95.0});

    auto cleaned = clean_series(s, {});
    CHECK(cleaned.series.size() == 3);
    CHECK(cleaned.report.duplicates.size() == 1);
    CHECK(cleaned.series.records[1].load_mw == doctest::Approx(100.0));
    CHECK(cleaned.report.gaps.empty());
}

TEST_CASE("clean_series long gap policy") {
    HourlySeries s = hours_from(2003, 1, 31, 0, {50.0});
    s.records.push_back({s.records[0].hour + 32 * 24, 60.0});  // > one month

    CHECK_THROWS_AS(clean_series(s, {}), Error);

    CleaningPolicy allow;
    allow.allow_long_gaps = true;
    auto cleaned = clean_series(s, allow);
    CHECK(cleaned.series.size() == 2);
    REQUIRE(cleaned.report.gaps.size() == 1);
    CHECK_FALSE(cleaned.report.gaps[0].filled);
}

TEST_CASE("clean_series is idempotent") {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> load(50.0, 150.0);
    HourlySeries s;
    std::int64_t base = hour_index({2010, 5, 1, 0});
    for (int i = 0; i < 500; ++i) s.records.push_back({base + i, load(rng)});
    s.records.erase(s.records.begin() + 100);  // one short gap
    auto once = clean_series(s, {});
    auto twice = clean_series(once.series, {});
    CHECK(twice.report.empty());
    REQUIRE(twice.series.size() == once.series.size());
    for (std::size_t i = 0; i < once.series.size(); ++i) {
        CHECK(twice.series.records[i].hour == once.series.records[i].hour);
        CHECK(twice.series.records[i].load_mw == once.series.records[i].load_mw);
    }
}

TEST_CASE("aggregate_monthly modes") {
    // Full January 2001 at constant 100 MW except one 1 MW dip.
    HourlySeries s;
    std::int64_t base = hour_index({2001, 1, 1, 0});
    for (int i = 0; i < 744; ++i) s.records.push_back({base + i, 100.0});

    auto peak = aggregate_monthly(s, Aggregation::peak);
    REQUIRE(peak.size() == 1);
    CHECK(peak.values[0] == 100.0);
    CHECK(peak.start == YearMonth{2001, 1});

    for (auto& r : s.records) r.load_mw = 1.0;
    auto sum = aggregate_monthly(s, Aggregation::sum);
    CHECK(sum.values[0] == doctest::Approx(744.0));
    auto mean = aggregate_monthly(s, Aggregation::mean);
    CHECK(mean.values[0] == doctest::Approx(1.0));
}

TEST_CASE("aggregate_monthly fails on empty months") {
    HourlySeries s = hours_from(2001, 1, 15, 0, {100.0});
    s.records.push_back({hour_index({2001, 3, 15, 0}), 120.0});  // February missing
    CHECK_THROWS_WITH_AS(aggregate_monthly(s, Aggregation::peak),
                         doctest::Contains("2001-02"), Error);
}

TEST_CASE("aggregate_monthly ordering invariants") {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> load(10.0, 400.0);
    HourlySeries s;
    std::int64_t base = hour_index({1999, 11, 1, 0});
    for (int i = 0; i < 24 * 120; ++i) s.records.push_back({base + i, load(rng)});

    auto peak = aggregate_monthly(s, Aggregation::peak);
    auto mean = aggregate_monthly(s, Aggregation::mean);
    auto mini = aggregate_monthly(s, Aggregation::minimum);
    REQUIRE(peak.size() == mean.size());
    REQUIRE(peak.size() == mini.size());
    CHECK(peak.size() == 4);  // Nov, Dec, Jan, Feb
    for (std::size_t i = 0; i < peak.size(); ++i) {
        CHECK(peak.values[i] >= mean.values[i]);
        CHECK(mean.values[i] >= mini.values[i]);
    }
}

TEST_CASE("hourly csv round trip is bit exact") {
    std::mt19937_64 rng(13);
    std::uniform_real_distribution<double> load(0.001, 250000.0);
    HourlySeries s;
    std::int64_t base = hour_index({1995, 2, 1, 0});
    for (int i = 0; i < 1000; ++i) s.records.push_back({base + i, load(rng)});

    std::ostringstream out;
    write_hourly_csv(out, s);
    std::istringstream in(out.str());
    auto parsed = parse_hourly_csv(in);
    REQUIRE(parsed.series.size() == s.size());
    for (std::size_t i = 0; i < s.size(); ++i) {
        CHECK(parsed.series.records[i].hour == s.records[i].hour);
        CHECK(parsed.series.records[i].load_mw == s.records[i].load_mw);
    }
}

TEST_CASE("monthly csv round trip") {
    auto series = testutil::make_series({101.5, 99.25, 123456.789012345678}, {1993, 11});
    std::ostringstream out;
    write_monthly_csv(out, series);
    std::istringstream in(out.str());
    auto parsed = read_monthly_csv(in);
    REQUIRE(parsed.size() == 3);
    CHECK(parsed.start == series.start);
    for (std::size_t i = 0; i < 3; ++i) CHECK(parsed.values[i] == series.values[i]);

    std::istringstream gap("year,month,value\n1993,1,5\n1993,3,6\n");
    CHECK_THROWS_AS(read_monthly_csv(gap), Error);
}
