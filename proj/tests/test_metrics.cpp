#include "benford/errors.hpp"
#include "benford/metrics.hpp"
#include "oracles.hpp"

#include <doctest.h>

#include <cmath>
#include <string>

using namespace benford;

namespace {

// Brute-force KS over a 10^6 grid plus the CDF's breakpoints; step CDFs also
// get their left limits, which a finite grid cannot resolve.
double grid_oracle_ks(const ModOneCdf& f) {
    std::vector<double> extra(f.breakpoints().begin(), f.breakpoints().end());
    double best = oracle::grid_ks([&](double s) { return f(s); }, 1'000'000, extra);
    if (f.is_step()) {
        for (const auto& a : f.atoms()) best = std::max(best, std::abs(f.left_limit(a.position) - a.position));
    }
    return best;
}

} // namespace

TEST_CASE("KS of the uniform law is zero") {
    const auto r = ks_distance(ModOneCdf::uniform(kDecimal));
    CHECK(r.value == doctest::Approx(0.0).epsilon(1e-15));
    CHECK(wasserstein_distance(ModOneCdf::uniform(kDecimal)) == doctest::Approx(0.0).epsilon(1e-15));
}

TEST_CASE("KS and Wasserstein of 10^(3Y/2)") {
    const auto f = log_mod_one(AnalyticDistribution(PowerOfUniform{1.5, kDecimal}), kDecimal);
    const auto r = ks_distance(f);
    CHECK(std::abs(r.value - 1.0 / 6.0) < 1e-12);
    CHECK(r.argmax == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(std::abs(grid_oracle_ks(f) - r.value) < 1e-9);

    // F(s) - s is two triangles of base 1/2 and height 1/6
    CHECK(std::abs(wasserstein_distance(f) - 1.0 / 12.0) < 1e-12);
    const double quad = oracle::simpson([&](double s) { return std::abs(f(s) - s); }, 1'000'000);
    CHECK(std::abs(quad - wasserstein_distance(f)) < 1e-9);
}

TEST_CASE("KS of uniform(0,1) mantissas sits at the interior critical point") {
    const auto f = log_mod_one(AnalyticDistribution(UniformContinuous{1.0}), kDecimal);
    const auto r = ks_distance(f);
    // (10^s - 1)/9 - s has derivative zero at 10^s = 9 / ln 10
    const double s_star = std::log10(9.0 / std::log(10.0));
    const double expected = s_star - (1.0 / std::log(10.0) - 1.0 / 9.0);
    CHECK(r.value == doctest::Approx(0.268844).epsilon(1e-5));
    CHECK(std::abs(r.value - expected) < 1e-15);
    CHECK(r.argmax == doctest::Approx(s_star).epsilon(1e-14));
    CHECK(std::abs(grid_oracle_ks(f) - r.value) < 1e-9);

    const double quad = oracle::simpson([&](double s) { return std::abs(f(s) - s); }, 1'000'000);
    CHECK(std::abs(quad - wasserstein_distance(f)) < 1e-9);
}

TEST_CASE("exact KS agrees with the grid oracle for every variant") {
    const std::vector<AnalyticDistribution> dists{
        AnalyticDistribution(UniformContinuous{std::pow(10.0, 0.25)}),
        AnalyticDistribution(UniformContinuous{std::pow(10.0, 0.8)}),
        AnalyticDistribution(UniformContinuous{4321.0}),
        AnalyticDistribution(PowerOfUniform{0.7, kDecimal}),
        AnalyticDistribution(PowerOfUniform{1.0, kDecimal}),
        AnalyticDistribution(BenfordDecade{2, kDecimal}),
        AnalyticDistribution(BenfordDecade{1, Base(3)}),
        AnalyticDistribution(UniformIntegers{20}),
        AnalyticDistribution(UniformIntegers{2000}),
    };
    for (int b : {10, 2}) {
        for (const auto& d : dists) {
            const auto f = log_mod_one(d, Base(b));
            const auto rep = distance_report(f);
            CHECK(std::abs(grid_oracle_ks(f) - rep.ks) < 1e-9);
            CHECK(rep.wasserstein <= rep.ks + 1e-15);
            CHECK(rep.wasserstein >= 0.0);
            if (!f.is_step()) {
                const double quad = oracle::simpson([&](double s) { return std::abs(f(s) - s); }, 200'000);
                CHECK(std::abs(quad - rep.wasserstein) < 1e-8);
            }
        }
    }
}

TEST_CASE("step CDF KS uses both one-sided limits") {
    // 1..20: 11/20 of the mass lies below log10 2, 13/20 at it.
    const auto f = log_mod_one(AnalyticDistribution(UniformIntegers{20}), kDecimal);
    const auto r = ks_distance(f);
    CHECK(r.value == doctest::Approx(13.0 / 20.0 - std::log10(2.0)).epsilon(1e-13));
    CHECK(r.argmax == doctest::Approx(std::log10(2.0)).epsilon(1e-13));

    // Point mass at 0 is as far from uniform as possible.
    const auto point = ModOneCdf::step(kDecimal, {{0.0, 1.0}});
    CHECK(ks_distance(point).value == 1.0);
    CHECK(ks_distance(point).argmax == 0.0);
    CHECK(wasserstein_distance(point) == doctest::Approx(0.5).epsilon(1e-15));
}

TEST_CASE("argmax ties resolve to the smallest location") {
    // Two atoms of mass 1/2 at 0 and 1/2: |F - s| = 1/2 at s = 0 and at 1/2-.
    const auto f = ModOneCdf::step(kDecimal, {{0.5, 0.5}, {0.0, 0.5}});
    const auto r = ks_distance(f);
    CHECK(r.value == 0.5);
    CHECK(r.argmax == 0.0);
}

TEST_CASE("shifts never move the uniform law, but do move others") {
    const auto uni = ModOneCdf::uniform(kDecimal);
    const auto f = log_mod_one(AnalyticDistribution(PowerOfUniform{1.5, kDecimal}), kDecimal);
    for (double delta : {0.1, 0.37, 0.5, 0.93}) {
        CHECK(ks_distance(shift_mod_one(uni, delta)).value < 1e-14);
        const auto g = shift_mod_one(f, delta);
        CHECK(ks_distance(g).value > 0.01);
        CHECK(std::abs(grid_oracle_ks(g) - ks_distance(g).value) < 1e-9);
    }
}

TEST_CASE("empirical KS") {
    const std::vector<double> decades{1.0, 10.0, 100.0};
    CHECK(empirical_ks(decades, kDecimal) == 1.0);

    const auto benford = sample(AnalyticDistribution(PowerOfUniform{1.0, kDecimal}), 1'000'000, 31);
    CHECK(dkw_bound(1'000'000) == doctest::Approx(0.0016276).epsilon(1e-4));
    CHECK(empirical_ks(benford, kDecimal) <= dkw_bound(benford.size()));

    const auto uni = sample(AnalyticDistribution(UniformContinuous{1.0}), 1'000'000, 32);
    const double exact = ks_distance(log_mod_one(AnalyticDistribution(UniformContinuous{1.0}), kDecimal)).value;
    CHECK(std::abs(empirical_ks(uni, kDecimal) - exact) <= 2.0 * dkw_bound(uni.size()));

    const std::vector<double> bad{3.0, 2.0, -1.0};
    try {
        (void)empirical_ks(bad, kDecimal);
        FAIL("expected DomainError");
    } catch (const DomainError& e) {
        CHECK(std::string(e.what()).find("sample 2") != std::string::npos);
    }
    CHECK_THROWS_AS(empirical_ks(std::vector<double>{}, kDecimal), DomainError);
}

TEST_CASE("first-digit chi-square") {
    // Base 2 has a single possible digit, so any data fits exactly.
    const std::vector<double> any{1.0, 3.0, 17.0};
    const auto b2 = first_digit_chisq(any, Base(2));
    CHECK(b2.statistic == doctest::Approx(0.0).epsilon(1e-15));
    CHECK(b2.dof == 0);

    // All 100 values start with 7: sum over d != 7 of E_d plus (100 - E_7)^2 / E_7
    std::vector<double> sevens(100, 7.0);
    const auto r = first_digit_chisq(sevens, kDecimal);
    double expected = 0.0;
    for (int d = 1; d <= 9; ++d) {
        const double e = 100.0 * std::log10(1.0 + 1.0 / d);
        const double o = d == 7 ? 100.0 : 0.0;
        expected += (o - e) * (o - e) / e;
    }
    CHECK(r.statistic == doctest::Approx(expected).epsilon(1e-13));
    CHECK(r.dof == 8);

    // 99.9% quantile of chi-square with 8 dof
    const auto decade = sample(AnalyticDistribution(BenfordDecade{0, kDecimal}), 100'000, 8);
    CHECK(first_digit_chisq(decade, kDecimal).statistic < 26.1245);

    CHECK_THROWS_AS(first_digit_chisq(std::vector<double>{1.0, 0.0}, kDecimal), DomainError);
}
