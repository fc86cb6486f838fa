#include <cmath>
#include <random>
#include <set>

#include "doctest.h"
#include "voltcast/parallel.hpp"

using namespace voltcast::parallel;

TEST_CASE("stream_seed produces distinct well-mixed streams") {
    std::set<std::uint64_t> seen;
    for (std::uint64_t i = 0; i < 10000; ++i) seen.insert(stream_seed(42, i));
    CHECK(seen.size() == 10000);
    CHECK(stream_seed(42, 0) != stream_seed(43, 0));
}

TEST_CASE("map_indexed serial and openmp agree bit for bit") {
    auto kernel = [](std::size_t i) {
        std::mt19937_64 rng(stream_seed(1234, i));
        std::normal_distribution<double> normal(0.0, 1.0);
        double acc = 0.0;
        for (int k = 0; k < 100; ++k) acc += normal(rng) * std::sqrt(static_cast<double>(k + 1));
        return acc;
    };
    auto serial = map_indexed<double>(500, kernel, Exec::serial);
    auto openmp = map_indexed<double>(500, kernel, Exec::openmp);
    REQUIRE(serial.size() == openmp.size());
    for (std::size_t i = 0; i < serial.size(); ++i) CHECK(serial[i] == openmp[i]);
}

TEST_CASE("count_indexed serial and openmp agree exactly") {
    auto pred = [](std::size_t i) {
        std::mt19937_64 rng(stream_seed(99, i));
        return (rng() & 7) == 0;
    };
    auto a = count_indexed(10000, pred, Exec::serial);
    auto b = count_indexed(10000, pred, Exec::openmp);
    CHECK(a == b);
}

TEST_CASE("empty ranges") {
    auto out = map_indexed<int>(0, [](std::size_t) { return 1; }, Exec::openmp);
    CHECK(out.empty());
    CHECK(count_indexed(0, [](std::size_t) { return true; }, Exec::openmp) == 0);
}
