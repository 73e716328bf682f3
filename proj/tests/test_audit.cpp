#include "benford/audit.hpp"
#include "benford/errors.hpp"
#include "oracles.hpp"

#include <doctest.h>

#include <cmath>
#include <random>

using namespace benford;

TEST_CASE("closed-form bound") {
    // 30-digit evaluation of the printed expression
    CHECK(std::abs(prop1_closed_form() - 0.134421724973860473586502748675) < 1e-15);
    CHECK(prop1_closed_form() > 0.0);
    CHECK(prop1_closed_form() < 0.5);
    const auto b = prop1_bound();
    CHECK(b.closed_form);
    CHECK(b.value == prop1_closed_form());
}

TEST_CASE("numerical phase minimum reproduces the closed-form bound") {
    const auto m = minimize_over_phase(kDecimal);
    CHECK(std::abs(m.d_star - prop1_closed_form()) < 1e-6);
    CHECK(m.d_star >= prop1_closed_form() - 1e-9);
    CHECK(m.theta_star > 0.0);
    CHECK(m.theta_star < 1.0);
    CHECK_THROWS_AS(minimize_over_phase(kDecimal, 8), DomainError);
}

TEST_CASE("phase curve") {
    const auto curve = prop1_curve(kDecimal, 1024);
    REQUIRE(curve.thetas.size() == 1024);
    CHECK(curve.distances[0] == doctest::Approx(0.268844).epsilon(1e-5));
    for (double d : curve.distances) CHECK(d >= curve.bound.value - 1e-9);
    CHECK(std::abs(curve.d_star - curve.bound.value) < 1e-6);
    CHECK(phase_distance(curve.theta_star, kDecimal) == doctest::Approx(curve.d_star).epsilon(1e-12));
    CHECK_THROWS_AS(prop1_curve(kDecimal, 4), DomainError);
}

TEST_CASE("phase distance is 1-periodic") {
    for (double theta : {0.0, 0.1, 0.5, 0.8, 0.999}) {
        CHECK(phase_distance(theta, kDecimal) == phase_distance(theta + 1.0 - 1.0, kDecimal));
        CHECK(std::abs(phase_distance(theta + 1.0, kDecimal) - phase_distance(theta, kDecimal)) < 1e-12);
    }
    std::mt19937_64 rng(12);
    std::uniform_real_distribution<double> mag(-6.0, 6.0);
    for (int i = 0; i < 50; ++i) {
        const double t = std::pow(10.0, mag(rng));
        CHECK(std::abs(uniform_upper_distance(t, kDecimal) - uniform_upper_distance(10.0 * t, kDecimal)) < 1e-12);
    }
}

TEST_CASE("large raw spread does not bring uniform variables closer to Benford") {
    const auto m = minimize_over_phase(kDecimal);
    const double bound = prop1_closed_form();
    for (int k = 0; k <= 12; ++k) {
        const double upper = std::pow(10.0, k + m.theta_star + 0.5);
        const auto spread = spread_analytic(AnalyticDistribution(UniformContinuous{upper}), Scale::raw, 0.25);
        CHECK(spread.range.value == upper);
        CHECK(uniform_upper_distance(upper, kDecimal) >= bound - 1e-9);
        CHECK(std::abs(uniform_upper_distance(upper, kDecimal) - phase_distance(m.theta_star + 0.5, kDecimal)) < 1e-9);
    }
}

TEST_CASE("other bases use the numerical minimum") {
    for (int b : {2, 3, 16}) {
        const auto bound = prop1_bound(Base(b));
        CHECK_FALSE(bound.closed_form);
        CHECK(bound.value > 0.0);
        const auto curve = prop1_curve(Base(b), 256);
        for (double d : curve.distances) CHECK(d >= bound.value - 1e-9);
    }
}

TEST_CASE("leading-one fraction of 1..2*10^n") {
    CHECK(leading_one_fraction(1) == Rational(11, 20));
    CHECK(leading_one_fraction(0) == Rational(1, 2));
    Rational prev = leading_one_fraction(1);
    for (unsigned n = 1; n <= 12; ++n) {
        const auto f = leading_one_fraction(n);
        CHECK(f > Rational(1, 2));
        if (n > 1) CHECK(f > prev);
        prev = f;
    }
    CHECK(std::abs(leading_one_fraction(12).convert_to<double>() - 5.0 / 9.0) < 1e-9);
    CHECK(leading_one_fraction(300) < Rational(5, 9));
    CHECK(leading_one_fraction(300) > Rational(1, 2));

    // Closed form (10^n + (10^n - 1)/9) / (2 * 10^n)
    for (unsigned n = 0; n <= 15; ++n) {
        boost::multiprecision::cpp_int p = boost::multiprecision::pow(boost::multiprecision::cpp_int(10), n);
        CHECK(leading_one_fraction(n) == Rational(p + (p - 1) / 9, 2 * p));
    }
}

TEST_CASE("leading-one fraction in other bases matches enumeration") {
    for (int b : {2, 3, 7}) {
        const Base base(b);
        for (unsigned n = 0; n <= 4; ++n) {
            const long top = 2 * static_cast<long>(std::pow(b, n));
            long ones = 0;
            for (long j = 1; j <= top; ++j) ones += first_digit(static_cast<double>(j), base) == 1 ? 1 : 0;
            CHECK(leading_one_fraction(n, base) == Rational(ones, top));
        }
    }
}

TEST_CASE("spread grows while conformance worsens") {
    const auto r = nonmonotonicity_report();
    CHECK(r.x_distance.ks == 0.0);
    CHECK(std::abs(r.z_distance.ks - 1.0 / 6.0) < 1e-12);
    CHECK(r.rows.size() == 8);
    for (const auto& row : r.rows) {
        CAPTURE(row.measure);
        CHECK(row.z_value > row.x_value);
    }
    CHECK(r.rows[0].measure == "range");
    CHECK(r.rows[0].x_value == doctest::Approx(9.0).epsilon(1e-14));
    CHECK(r.rows[0].z_value == doctest::Approx(std::pow(10.0, 1.5) - 1.0).epsilon(1e-14));
    CHECK(r.rows[4].scale == Scale::log);
    CHECK(r.rows[4].x_value == 1.0);
    CHECK(r.rows[4].z_value == 1.5);
}

TEST_CASE("10^Y is Benford in base 10 but not in base 2") {
    const std::vector<Base> bases{kDecimal, Base(2)};
    const auto entries = base_change_audit(AnalyticDistribution(PowerOfUniform{1.0, kDecimal}), bases);
    REQUIRE(entries.size() == 2);
    CHECK(entries[0].distance.ks == 0.0);

    // frac(Y log2 10) has density 4/A on [0, frac A) and 3/A above, A = log2 10.
    const double a = std::log2(10.0);
    const double f = a - 3.0;
    const double expected = (4.0 / a - 1.0) * f;
    CHECK(std::abs(entries[1].distance.ks - expected) < 1e-12);
    CHECK(entries[1].distance.ks == doctest::Approx(0.06572).epsilon(2e-4));
    CHECK(entries[1].distance.ks_argmax == doctest::Approx(f).epsilon(1e-12));
    const auto grid = oracle::grid_ks([&](double s) { return oracle::wrapped_uniform_cdf(0.0, a, s); }, 1'000'000, {f});
    CHECK(std::abs(grid - entries[1].distance.ks) < 1e-9);

    CHECK(std::abs(entries[1].log_range_ratio - std::log2(10.0)) < 1e-12);
    CHECK(std::abs(entries[1].log_std_ratio - std::log2(10.0)) < 1e-12);
}

TEST_CASE("Benford decades are not Benford on the log scale") {
    // frac(log10 U) for U uniform on (k, k+1) lives on a strict subinterval,
    // so the KS distance is the larger of its two gaps.
    const double expected1 = 1.0 - std::log10(2.0);
    const double expected5 = std::log10(5.0);
    const double expected10 = 1.0 - std::log10(1.1);
    CHECK(std::abs(log_of_benford_audit(1).ks - expected1) < 1e-12);
    CHECK(std::abs(log_of_benford_audit(5).ks - expected5) < 1e-12);
    CHECK(std::abs(log_of_benford_audit(10).ks - expected10) < 1e-12);
    for (int k : {1, 2, 5, 10, 50}) {
        const auto r = log_of_benford_audit(k);
        CHECK(r.ks > 0.01);
        const double grid = oracle::grid_ks(
            [&](double s) { return oracle::log_uniform_mantissa_cdf(k, k + 1.0, 10.0, s); }, 1'000'000,
            {r.ks_argmax, std::log10(static_cast<double>(k)) - std::floor(std::log10(static_cast<double>(k)))});
        CHECK(std::abs(grid - r.ks) < 1e-9);
        CHECK(ks_distance(log_mod_one(AnalyticDistribution(BenfordDecade{k, kDecimal}), kDecimal)).value == 0.0);
    }
    CHECK_THROWS_AS(log_of_benford_audit(0), DomainError);
    CHECK_THROWS_AS(log_of_benford_audit(-3), DomainError);
}

TEST_CASE("mixture registry") {
    CHECK_THROWS_AS(validate_component({"gamma", {{"k", 2.0}}}), ConfigError);
    CHECK_THROWS_AS(validate_component({"uniform", {}}), ConfigError);
    CHECK_THROWS_AS(validate_component({"pareto", {{"xm", 1.0}, {"a", -1.0}}}), ConfigError);
    CHECK_THROWS_AS(validate_component({"power_of_uniform", {{"a", 1.0}, {"base", 2.5}}}), ConfigError);

    const std::size_t n = 400'000;
    auto mean_of = [](const std::vector<double>& v) {
        double s = 0.0;
        for (double x : v) s += x;
        return s / static_cast<double>(v.size());
    };
    CHECK(mean_of(draw_component({"uniform", {{"T", 8.0}}}, n, 1)) == doctest::Approx(4.0).epsilon(0.01));
    CHECK(mean_of(draw_component({"exponential", {{"lambda", 0.5}}}, n, 2)) == doctest::Approx(2.0).epsilon(0.01));
    CHECK(mean_of(draw_component({"lognormal", {{"mu", 0.3}, {"sigma", 0.4}}}, n, 3)) ==
          doctest::Approx(std::exp(0.3 + 0.08)).epsilon(0.01));
    CHECK(mean_of(draw_component({"pareto", {{"xm", 2.0}, {"a", 4.0}}}, n, 4)) ==
          doctest::Approx(2.0 * 4.0 / 3.0).epsilon(0.01));
    const auto pou = draw_component({"power_of_uniform", {{"a", 1.0}}}, n, 5);
    CHECK(empirical_ks(pou, kDecimal) < dkw_bound(n));

    const auto a = random_mixture(20, 10, 42);
    const auto b = random_mixture(20, 10, 42);
    REQUIRE(a.components.size() == 20);
    for (std::size_t i = 0; i < 20; ++i) {
        CHECK(a.components[i].sampler == b.components[i].sampler);
        CHECK(a.components[i].params == b.components[i].params);
        CHECK_NOTHROW(validate_component(a.components[i]));
    }
}

TEST_CASE("mixture traces") {
    const MixtureSpec benford{{{"power_of_uniform", {{"a", 1.0}}}}, 200'000, 9};
    const auto t1 = mixture_experiment(benford, kDecimal);
    REQUIRE(t1.size() == 1);
    CHECK(t1[0].ks <= dkw_bound(200'000));
    CHECK(t1[0].dof == 8);

    const MixtureSpec uni{{{"uniform", {{"T", 1.0}}}}, 200'000, 9};
    const auto t2 = mixture_experiment(uni, kDecimal);
    CHECK(std::abs(t2[0].ks - 0.268844) <= dkw_bound(200'000));

    const auto spec = random_mixture(6, 20'000, 5);
    const auto first = mixture_experiment(spec, kDecimal);
    const auto second = mixture_experiment(spec, kDecimal);
    REQUIRE(first.size() == 6);
    for (std::size_t i = 0; i < first.size(); ++i) {
        CHECK(first[i].n_components == i + 1);
        CHECK(first[i].ks == second[i].ks);
        CHECK(first[i].chisq == second[i].chisq);
    }

    CHECK_THROWS_AS(mixture_experiment(MixtureSpec{{}, 10, 0}, kDecimal), ConfigError);
    CHECK_THROWS_AS(mixture_experiment(MixtureSpec{{{"nope", {}}}, 10, 0}, kDecimal), ConfigError);
}
