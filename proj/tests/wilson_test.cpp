#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <utility>

#include "bai/rng.hpp"
#include "bai/wilson.hpp"
#include "oracles.hpp"

using bai::normal_quantile;
using bai::wilson_interval;
using bai::WilsonInterval;

TEST_CASE("normal quantile at the median is exactly zero") {
    CHECK(normal_quantile(0.5) == 0.0);
}

TEST_CASE("normal quantile matches the published two-sided 95% value") {
    CHECK(std::abs(normal_quantile(0.975) - 1.959963985) < 1e-9);
    CHECK(std::abs(static_cast<double>(oracle::normal_quantile(0.975L)) -
                   1.959963985) < 1e-9);
}

TEST_CASE("normal quantile is antisymmetric") {
    CHECK(std::abs(normal_quantile(0.025) + normal_quantile(0.975)) < 1e-12);
    CHECK(std::abs(normal_quantile(0.1) + normal_quantile(0.9)) < 1e-12);
}

TEST_CASE("normal quantile tracks the bisection oracle to 1e-9") {
    const double fixed[] = {1e-10,  1e-8,  1e-4, 0.02425, 0.3,
                            0.6827, 0.975, 0.999, 1.0 - 1e-8, 1.0 - 1e-10};
    for (double p : fixed) {
        const double want =
            static_cast<double>(oracle::normal_quantile(static_cast<long double>(p)));
        CHECK(std::abs(normal_quantile(p) - want) < 1e-9);
    }
    bai::Rng rng(7);
    for (int i = 0; i < 2000; ++i) {
        const double p = 1e-10 + (1.0 - 2e-10) * rng.next_unit();
        const double want =
            static_cast<double>(oracle::normal_quantile(static_cast<long double>(p)));
        CHECK(std::abs(normal_quantile(p) - want) < 1e-9);
    }
}

TEST_CASE("normal quantile rejects arguments outside the open unit interval") {
    CHECK_THROWS_AS(normal_quantile(0.0), std::invalid_argument);
    CHECK_THROWS_AS(normal_quantile(1.0), std::invalid_argument);
    CHECK_THROWS_AS(normal_quantile(-0.3), std::invalid_argument);
    CHECK_THROWS_AS(normal_quantile(2.0), std::invalid_argument);
}

TEST_CASE("zero samples always yield the full unit interval") {
    const double p_hats[] = {0.0, 0.25, 0.5, 1.0};
    const double alphas[] = {0.001, 0.05, 0.5, 0.999};
    for (double p : p_hats) {
        for (double a : alphas) {
            const WilsonInterval w = wilson_interval(p, 0, a);
            CHECK(w.lower == 0.0);
            CHECK(w.upper == 1.0);
        }
    }
}

TEST_CASE("interval for ten fair samples matches the worked value") {
    const WilsonInterval w = wilson_interval(0.5, 10, 0.05);
    CHECK(std::abs(w.lower - 0.2366) < 1e-4);
    CHECK(std::abs(w.upper - 0.7634) < 1e-4);
}

TEST_CASE("boundary estimates stay exact") {
    const double z = normal_quantile(1.0 - 0.05 / 2.0);
    const WilsonInterval at_zero = wilson_interval(0.0, 10, 0.05);
    CHECK(at_zero.lower == 0.0);
    CHECK(std::abs(at_zero.upper - z * z / (10.0 + z * z)) < 1e-12);
    const WilsonInterval at_one = wilson_interval(1.0, 10, 0.05);
    CHECK(at_one.upper == 1.0);
    CHECK(std::abs(at_one.lower - 10.0 / (10.0 + z * z)) < 1e-12);

    for (std::int64_t n : {1, 2, 7, 100, 99991}) {
        for (double alpha : {0.001, 0.05, 0.3, 0.97}) {
            CHECK(wilson_interval(0.0, n, alpha).lower == 0.0);
            CHECK(wilson_interval(1.0, n, alpha).upper == 1.0);
        }
    }
}

TEST_CASE("interval agrees with a straight transcription oracle") {
    bai::Rng rng(123);
    double worst = 0.0;
    for (int i = 0; i < 10000; ++i) {
        const double p = rng.next_unit();
        const std::int64_t n = 1 + static_cast<std::int64_t>(rng.next_index(10000));
        const double alpha = 0.001 + 0.998 * rng.next_unit();
        const WilsonInterval got = wilson_interval(p, n, alpha);
        const oracle::Interval want =
            oracle::wilson(static_cast<long double>(p), n,
                           static_cast<long double>(alpha));
        worst = std::max(worst,
                         std::abs(got.lower - static_cast<double>(want.lower)));
        worst = std::max(worst,
                         std::abs(got.upper - static_cast<double>(want.upper)));
    }
    CHECK(worst < 1e-9);
}

TEST_CASE("interval bounds are ordered and inside the unit interval") {
    bai::Rng rng(5);
    for (int i = 0; i < 5000; ++i) {
        const double p = rng.next_unit();
        const std::int64_t n = static_cast<std::int64_t>(rng.next_index(1000));
        const double alpha = 0.001 + 0.998 * rng.next_unit();
        const WilsonInterval w = wilson_interval(p, n, alpha);
        CHECK(w.lower >= 0.0);
        CHECK(w.lower <= w.upper);
        CHECK(w.upper <= 1.0);
    }
}

TEST_CASE("interval width shrinks as samples accumulate") {
    for (double p = 0.0; p <= 1.0001; p += 0.1) {
        for (double alpha : {0.01, 0.05, 0.3}) {
            double prev = wilson_interval(p, 1, alpha).width();
            for (std::int64_t n = 2; n <= 1000; ++n) {
                const double next = wilson_interval(p, n, alpha).width();
                CHECK(next <= prev + 1e-15);
                prev = next;
            }
        }
    }
}

TEST_CASE("lower confidence never widens the interval") {
    bai::Rng rng(11);
    for (int i = 0; i < 2000; ++i) {
        const double p = rng.next_unit();
        const std::int64_t n = 1 + static_cast<std::int64_t>(rng.next_index(500));
        double a1 = 0.001 + 0.997 * rng.next_unit();
        double a2 = 0.001 + 0.997 * rng.next_unit();
        if (a1 > a2) std::swap(a1, a2);
        CHECK(wilson_interval(p, n, a2).width() <=
              wilson_interval(p, n, a1).width() + 1e-15);
    }
}

TEST_CASE("the Wilson midpoint lies inside the interval") {
    bai::Rng rng(17);
    for (int i = 0; i < 2000; ++i) {
        const double p = rng.next_unit();
        const std::int64_t n = 1 + static_cast<std::int64_t>(rng.next_index(2000));
        const double alpha = 0.001 + 0.998 * rng.next_unit();
        const double z = normal_quantile(1.0 - alpha / 2.0);
        const double dn = static_cast<double>(n);
        const double center = (p + z * z / (2.0 * dn)) / (1.0 + z * z / dn);
        const WilsonInterval w = wilson_interval(p, n, alpha);
        CHECK(w.lower <= center + 1e-12);
        CHECK(center <= w.upper + 1e-12);
    }
}

TEST_CASE("interval validates its arguments") {
    CHECK_THROWS_AS(wilson_interval(0.5, 10, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(wilson_interval(0.5, 10, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(wilson_interval(-0.1, 10, 0.05), std::invalid_argument);
    CHECK_THROWS_AS(wilson_interval(1.1, 10, 0.05), std::invalid_argument);
}
