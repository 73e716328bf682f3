#include "benford/digits.hpp"
#include "benford/errors.hpp"

#include <doctest.h>

#include <cmath>
#include <limits>
#include <random>
#include <vector>

using namespace benford;

TEST_CASE("base rejects radix below 2") {
    CHECK_THROWS_AS(Base(1), DomainError);
    CHECK_THROWS_AS(Base(0), DomainError);
    CHECK(Base(2).value() == 2);
}

TEST_CASE("significand examples") {
    const auto a = significand(0.0301, kDecimal);
    CHECK(a.mantissa == doctest::Approx(3.01).epsilon(1e-15));
    CHECK(a.exponent == -2);

    const auto one = significand(1.0, kDecimal);
    CHECK(one.mantissa == 1.0);
    CHECK(one.exponent == 0);

    // 10 -> 5 -> 2.5 -> 1.25 after three halvings
    const auto ten = significand(10.0, Base(2));
    CHECK(ten.mantissa == 1.25);
    CHECK(ten.exponent == 3);
}

TEST_CASE("exact powers of the base have mantissa exactly 1") {
    for (int e = -20; e <= 20; ++e) {
        const auto sig = significand(std::pow(10.0, e), kDecimal);
        CHECK(sig.mantissa == 1.0);
        CHECK(sig.exponent == e);
    }
    for (int b = 3; b <= 16; ++b) {
        const Base base(b);
        double p = 1.0;
        for (int e = 0; e < 10; ++e, p *= b) {
            CHECK(significand(p, base).mantissa == 1.0);
            CHECK(significand(p, base).exponent == e);
        }
    }
}

TEST_CASE("values a few ulps below a power snap to the next decade") {
    const double below = std::nextafter(1000.0, 0.0);
    const auto sig = significand(below, kDecimal);
    CHECK(sig.mantissa == 1.0);
    CHECK(sig.exponent == 3);
    CHECK(first_digit(below, kDecimal) == 1);
}

TEST_CASE("significand rejects non-positive and non-finite input") {
    CHECK_THROWS_AS(significand(0.0, kDecimal), DomainError);
    CHECK_THROWS_AS(significand(-3.0, kDecimal), DomainError);
    CHECK_THROWS_AS(significand(std::numeric_limits<double>::infinity(), kDecimal), DomainError);
    CHECK_THROWS_AS(significand(std::nan(""), kDecimal), DomainError);
    CHECK_THROWS_AS(first_digit(0.0, kDecimal), DomainError);
}

TEST_CASE("first digit examples") {
    CHECK(first_digit(19.0, kDecimal) == 1);
    CHECK(first_digit(0.00072, kDecimal) == 7);
    CHECK(first_digit(5.0, Base(2)) == 1);
    CHECK(first_digit(255.0, Base(16)) == 15);
    CHECK(first_digit(1e-310, kDecimal) == 1); // subnormal
}

TEST_CASE("significand properties on random inputs") {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> log_mag(-30.0, 30.0);
    for (int b : {2, 3, 7, 10, 16}) {
        const Base base(b);
        for (int i = 0; i < 2000; ++i) {
            const double x = std::pow(10.0, log_mag(rng));
            const auto sig = significand(x, base);
            REQUIRE(sig.mantissa >= 1.0);
            REQUIRE(sig.mantissa < b);
            CHECK(first_digit(x, base) == static_cast<int>(std::floor(sig.mantissa)));
            CHECK(sig.mantissa * std::pow(static_cast<double>(b), sig.exponent) == doctest::Approx(x).epsilon(1e-13));

            // Scaling by b^m leaves the mantissa unchanged.
            const int m = static_cast<int>(rng() % 9) - 4;
            const auto scaled = significand(x * std::pow(static_cast<double>(b), m), base);
            if (std::abs(scaled.mantissa - sig.mantissa) < 1.0) {
                CHECK(scaled.mantissa == doctest::Approx(sig.mantissa).epsilon(1e-13));
                CHECK(scaled.exponent == sig.exponent + m);
            }
        }
    }
}

TEST_CASE("Benford first-digit pmf") {
    CHECK(benford_first_digit_pmf(1, kDecimal) == doctest::Approx(0.30102999566398).epsilon(1e-13));
    CHECK(benford_first_digit_pmf(9, kDecimal) == doctest::Approx(std::log10(10.0 / 9.0)).epsilon(1e-14));
    CHECK(benford_first_digit_pmf(1, Base(2)) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK_THROWS_AS(benford_first_digit_pmf(0, kDecimal), DomainError);
    CHECK_THROWS_AS(benford_first_digit_pmf(10, kDecimal), DomainError);

    for (int b = 2; b <= 16; ++b) {
        double total = 0.0;
        for (int d = 1; d < b; ++d) total += benford_first_digit_pmf(d, Base(b));
        CHECK(std::abs(total - 1.0) < 1e-12);
    }
}

TEST_CASE("Benford block pmf") {
    const std::vector<int> one{1};
    CHECK(benford_block_pmf(one, kDecimal) == doctest::Approx(0.30103).epsilon(1e-5));
    const std::vector<int> ten{1, 0};
    CHECK(benford_block_pmf(ten, kDecimal) == doctest::Approx(std::log10(11.0 / 10.0)).epsilon(1e-14));
    const std::vector<int> nn{9, 9};
    CHECK(benford_block_pmf(nn, kDecimal) == doctest::Approx(std::log10(100.0 / 99.0)).epsilon(1e-14));

    CHECK_THROWS_AS(benford_block_pmf(std::vector<int>{}, kDecimal), DomainError);
    CHECK_THROWS_AS(benford_block_pmf(std::vector<int>{0, 1}, kDecimal), DomainError);
    CHECK_THROWS_AS(benford_block_pmf(std::vector<int>{1, 10}, kDecimal), DomainError);
}

TEST_CASE("marginalizing the last digit recovers the shorter block") {
    for (int b : {2, 3, 10, 16}) {
        const Base base(b);
        for (const std::vector<int>& prefix : {std::vector<int>{1}, std::vector<int>{b - 1}, std::vector<int>{1, 0},
                                               std::vector<int>{b - 1, b - 1, 1}}) {
            double total = 0.0;
            for (int d = 0; d < b; ++d) {
                auto block = prefix;
                block.push_back(d);
                total += benford_block_pmf(block, base);
            }
            CHECK(std::abs(total - benford_block_pmf(prefix, base)) < 1e-12);
        }
    }
}
