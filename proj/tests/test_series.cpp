#include <cmath>
#include <random>

#include "doctest.h"
#include "support/testutil.hpp"
#include "voltcast/arima.hpp"
#include "voltcast/error.hpp"
#include "voltcast/series_ops.hpp"

using namespace voltcast;
using testutil::make_series;

TEST_CASE("difference fixtures") {
    auto ramp = difference(make_series({1, 2, 3, 4}), 1);
    CHECK(ramp.values == std::vector<double>{1, 1, 1});
    CHECK(ramp.transform.diff == 1);
    CHECK(ramp.transform.diff_initial == std::vector<double>{1});
    CHECK(ramp.start == YearMonth{2000, 2});

    auto quad = difference(make_series({1, 4, 9, 16}), 2);
    CHECK(quad.values == std::vector<double>{2, 2});

    CHECK_THROWS_AS(difference(make_series({1, 2, 3}), 3), Error);
    CHECK_THROWS_AS(difference(make_series({1, 2}), 0), Error);
}

TEST_CASE("integrate inverts difference") {
    auto diffed = make_series({1, 1, 1}, {2000, 2});
    diffed.transform.diff = 1;
    double init[] = {1.0};
    auto back = integrate(diffed, init);
    CHECK(back.values == std::vector<double>{1, 2, 3, 4});
    CHECK(back.start == YearMonth{2000, 1});
    CHECK(back.transform.diff == 0);

    MonthlySeries empty_diff = make_series({}, {2001, 5});
    double init5[] = {5.0};
    CHECK(integrate(empty_diff, init5).values == std::vector<double>{5});

    CHECK_THROWS_AS(integrate(diffed, std::span<const double>{}), Error);
}

TEST_CASE("difference then integrate is exact on random series") {
    // Bit-exactness holds on the data this library handles: level series
    // whose consecutive values stay within a factor of two (subtraction is
    // then exact by the Sterbenz lemma), and integer-valued series for any d.
    std::mt19937_64 rng(42);
    std::uniform_int_distribution<int> length(5, 60);

    SUBCASE("load-like positive walks, d = 1") {
        std::uniform_real_distribution<double> step(-0.2, 0.25);
        for (int rep = 0; rep < 300; ++rep) {
            int n = length(rng);
            std::vector<double> vals(static_cast<std::size_t>(n));
            double level = 1.5e5;
            for (auto& v : vals) {
                level *= 1.0 + step(rng);
                v = level;
            }
            auto original = make_series(vals);
            auto diffed = difference(original, 1);
            auto back = integrate(diffed, diffed.transform.diff_initial);
            REQUIRE(back.values.size() == original.values.size());
            for (std::size_t i = 0; i < vals.size(); ++i)
                CHECK(back.values[i] == original.values[i]);
            CHECK(back.start == original.start);
        }
    }

    SUBCASE("integer-valued series, d up to 3") {
        std::uniform_int_distribution<int> order(1, 3);
        std::uniform_int_distribution<long long> value(-(1LL << 40), 1LL << 40);
        for (int rep = 0; rep < 300; ++rep) {
            int n = length(rng);
            int d = std::min(order(rng), n - 2);
            if (d < 1) continue;
            std::vector<double> vals(static_cast<std::size_t>(n));
            for (auto& v : vals) v = static_cast<double>(value(rng));
            auto original = make_series(vals);
            auto diffed = difference(original, d);
            auto back = integrate(diffed, diffed.transform.diff_initial);
            for (std::size_t i = 0; i < vals.size(); ++i)
                CHECK(back.values[i] == original.values[i]);
        }
    }
}

TEST_CASE("log and exp transforms") {
    const double e = std::exp(1.0);
    auto logged = log_transform(make_series({1.0, e, e * e}));
    CHECK(logged.values[0] == doctest::Approx(0.0));
    CHECK(logged.values[1] == doctest::Approx(1.0));
    CHECK(logged.values[2] == doctest::Approx(2.0));
    CHECK(logged.transform.log);

    CHECK_THROWS_WITH_AS(log_transform(make_series({1.0, 0.0, 2.0})),
                         doctest::Contains("index 1"), Error);

    // exp(log(x)) reproduces x up to rounding: log carries a half-ulp error
    // that exp amplifies by |log x|, so the attainable bound is
    // (|log x| + 2) ulp rather than a single ulp.
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> value(1e-6, 1e7);
    std::vector<double> vals(200);
    for (auto& v : vals) v = value(rng);
    auto series = make_series(vals);
    auto round = exp_transform(log_transform(series));
    for (std::size_t i = 0; i < vals.size(); ++i) {
        double ulp = std::nextafter(vals[i], INFINITY) - vals[i];
        double bound = (std::fabs(std::log(vals[i])) + 2.0) * ulp;
        CHECK(std::fabs(round.values[i] - vals[i]) <= bound);
    }
}

TEST_CASE("describe matches a direct-formula evaluation") {
    // Expected values computed independently from the moment formulas
    // (population m2/m3/m4, sample std_dev).
    auto s = describe(make_series(
        {112.3, 98.7, 130.1, 125.0, 99.9, 140.2, 118.8, 101.5, 122.4, 135.6}));
    CHECK(s.n == 10);
    CHECK(s.mean == doctest::Approx(118.45).epsilon(1e-12));
    CHECK(s.median == doctest::Approx(120.6).epsilon(1e-12));
    CHECK(s.min == 98.7);
    CHECK(s.max == 140.2);
    CHECK(s.std_dev == doctest::Approx(14.984529058702877).epsilon(1e-12));
    CHECK(s.skewness == doctest::Approx(-0.06725546044429143).epsilon(1e-9));
    CHECK(s.kurtosis == doctest::Approx(1.6781931792320328).epsilon(1e-9));
}

TEST_CASE("describe edge cases") {
    auto sym = describe(make_series({-1.0, 0.0, 1.0}));
    CHECK(sym.skewness == doctest::Approx(0.0));
    CHECK(sym.median == 0.0);
    CHECK_THROWS_AS(describe(make_series({1.0})), Error);
    auto even = describe(make_series({4.0, 1.0, 3.0, 2.0}));
    CHECK(even.median == doctest::Approx(2.5));
}

TEST_CASE("describe is scale equivariant") {
    auto vals = testutil::normal_sample(99, 400, 50.0, 7.0);
    auto base = describe(make_series(vals));
    for (double c : {0.25, 3.0, 1e4}) {
        auto scaled_vals = vals;
        for (auto& v : scaled_vals) v *= c;
        auto scaled = describe(make_series(scaled_vals));
        CHECK(scaled.mean == doctest::Approx(c * base.mean).epsilon(1e-9));
        CHECK(scaled.max == doctest::Approx(c * base.max).epsilon(1e-9));
        CHECK(scaled.min == doctest::Approx(c * base.min).epsilon(1e-9));
        CHECK(scaled.median == doctest::Approx(c * base.median).epsilon(1e-9));
        CHECK(scaled.std_dev == doctest::Approx(c * base.std_dev).epsilon(1e-9));
        CHECK(scaled.skewness == doctest::Approx(base.skewness).epsilon(1e-9));
        CHECK(scaled.kurtosis == doctest::Approx(base.kurtosis).epsilon(1e-9));
    }
}

TEST_CASE("acf basics and bands") {
    auto vals = testutil::normal_sample(3, 500);
    auto points = acf(vals, 20);
    REQUIRE(points.size() == 21);
    CHECK(points[0].lag == 0);
    CHECK(points[0].value == 1.0);
    CHECK(points[1].confidence_bound == doctest::Approx(1.96 / std::sqrt(500.0)));
    for (const auto& pt : points) {
        CHECK(pt.value <= 1.0);
        CHECK(pt.value >= -1.0);
    }
    CHECK_THROWS_AS(acf(std::vector<double>(50, 3.14), 5), Error);
    CHECK_THROWS_AS(acf(vals, 500), Error);
}

TEST_CASE("acf is shift invariant") {
    auto vals = testutil::normal_sample(17, 300);
    auto base = acf(vals, 10);
    auto shifted_vals = vals;
    for (auto& v : shifted_vals) v += 123.456;
    auto shifted = acf(shifted_vals, 10);
    for (std::size_t k = 0; k < base.size(); ++k)
        CHECK(shifted[k].value == doctest::Approx(base[k].value).epsilon(1e-9));
}

TEST_CASE("acf of simulated AR(1) matches theory") {
    auto y = simulate_arma({1, 0, 0}, 0.0, std::vector<double>{0.8}, {}, 10000, 2024);
    auto points = acf(y, 5);
    for (int k = 1; k <= 5; ++k)
        CHECK(std::fabs(points[static_cast<std::size_t>(k)].value - std::pow(0.8, k)) < 0.03);
}

TEST_CASE("acf of white noise stays inside loose bands") {
    auto y = testutil::normal_sample(31337, 10000);
    auto points = acf(y, 20);
    for (int k = 1; k <= 20; ++k) CHECK(std::fabs(points[static_cast<std::size_t>(k)].value) < 0.03);
}

TEST_CASE("pacf definitional and theory checks") {
    auto vals = testutil::normal_sample(23, 400);
    auto a = acf(vals, 10);
    auto p = pacf(vals, 10);
    REQUIRE(p.size() == 11);
    CHECK(p[1].value == doctest::Approx(a[1].value).epsilon(1e-12));

    auto ar1 = simulate_arma({1, 0, 0}, 0.0, std::vector<double>{0.8}, {}, 10000, 77);
    auto p1 = pacf(ar1, 6);
    CHECK(std::fabs(p1[1].value - 0.8) < 0.03);
    for (int k = 2; k <= 6; ++k) CHECK(std::fabs(p1[static_cast<std::size_t>(k)].value) < 0.03);

    auto ar2 = simulate_arma({2, 0, 0}, 0.0, std::vector<double>{0.5, 0.3}, {}, 10000, 78);
    auto p2 = pacf(ar2, 8);
    CHECK(std::fabs(p2[2].value) > 0.2);  // strong lag-2 partial
    for (int k = 3; k <= 8; ++k)
        CHECK(std::fabs(p2[static_cast<std::size_t>(k)].value) < 1.96 / std::sqrt(10000.0) + 0.02);
}

TEST_CASE("split_train_test") {
    std::vector<double> vals(288);
    for (std::size_t i = 0; i < vals.size(); ++i) vals[i] = 100.0 + static_cast<double>(i);
    auto series = make_series(vals, {1993, 1});

    auto split = split_train_test(series, {2015, 12});
    CHECK(split.train.size() == 276);
    CHECK(split.test.size() == 12);
    CHECK(split.test.start == YearMonth{2016, 1});
    CHECK(split.train.values.back() == vals[275]);
    CHECK(split.test.values.front() == vals[276]);

    CHECK_THROWS_AS(split_train_test(series, {2016, 12}), Error);  // empty test
    CHECK_THROWS_AS(split_train_test(series, {1992, 12}), Error);

    // calendar arithmetic: training through 2008-12 takes 16 years x 12 points
    std::vector<double> seventeen_years(204, 1.0);
    auto recession = split_train_test(make_series(seventeen_years, {1993, 1}), {2008, 12});
    CHECK(recession.train.size() == 192);
    CHECK(recession.test.size() == 12);

    // 1993..2008 data, train through 2007-12, 2008 held out
    std::vector<double> sixteen_years(192, 1.0);
    auto recession2 = split_train_test(make_series(sixteen_years, {1993, 1}), {2007, 12});
    CHECK(recession2.train.size() == 180);
    CHECK(recession2.test.size() == 12);
}

TEST_CASE("split preserves total length on random cut points") {
    std::mt19937_64 rng(4);
    std::uniform_int_distribution<int> len(24, 400);
    for (int rep = 0; rep < 50; ++rep) {
        int n = len(rng);
        auto series = make_series(std::vector<double>(static_cast<std::size_t>(n), 1.0), {1990, 1});
        std::uniform_int_distribution<int> cut(0, n - 2);
        auto train_end = series.start.plus(cut(rng));
        auto split = split_train_test(series, train_end);
        CHECK(split.train.size() + split.test.size() == series.size());
        CHECK(split.test.start == train_end.next());
    }
}
