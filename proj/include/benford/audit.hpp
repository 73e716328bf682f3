#pragma once

#include "benford/digits.hpp"
#include "benford/metrics.hpp"
#include "benford/modone.hpp"
#include "benford/spread.hpp"

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

namespace benford {

// --- Uniform(0, T) mantissa distance as a function of phase ----------------

/// KS distance of frac(log_b X), X uniform on (0, b^theta), from uniform.
[[nodiscard]] double phase_distance(double theta, Base base);

/// Same distance parameterized by the upper end T of the support.
[[nodiscard]] double uniform_upper_distance(double upper, Base base);

/// (-9 + ln 10 + 9 ln 9 - 9 ln ln 10) / (18 ln 10), the sharp lower bound of
/// the KS distance for decimal mantissas of uniform variables.
[[nodiscard]] double prop1_closed_form();

struct PhaseMinimum {
    double theta_star;
    double d_star;
};

/// Grid scan over theta followed by golden-section refinement to 1e-10.
[[nodiscard]] PhaseMinimum minimize_over_phase(Base base, std::size_t grid_size = 4096);

struct Prop1Bound {
    double value;
    /// True when value comes from the closed form (base 10 only); otherwise
    /// it is the numerically minimized distance.
    bool closed_form;
};

[[nodiscard]] Prop1Bound prop1_bound(Base base = kDecimal);

struct Prop1Curve {
    int base;
    std::vector<double> thetas;
    std::vector<double> distances;
    double theta_star;
    double d_star;
    Prop1Bound bound;
};

[[nodiscard]] Prop1Curve prop1_curve(Base base, std::size_t grid_size);

// --- Integer counterexample --------------------------------------------------

using Rational = boost::multiprecision::cpp_rational;

/// Exact fraction of {1, ..., 2 b^n} whose leading base-b digit is 1.
[[nodiscard]] Rational leading_one_fraction(unsigned n, Base base = kDecimal);

// --- Spread versus distance ---------------------------------------------------

struct ComparisonRow {
    std::string measure;
    Scale scale;
    double x_value;
    double z_value;
};

/// X = b^Y against Z = b^(3Y/2): every spread of Z is larger, yet X is exactly
/// Benford and Z is not.
struct NonmonotonicityReport {
    int base;
    std::vector<ComparisonRow> rows;
    DistanceReport x_distance;
    DistanceReport z_distance;
};

[[nodiscard]] NonmonotonicityReport nonmonotonicity_report(Base base = kDecimal);

struct BaseChangeEntry {
    int base;
    DistanceReport distance;
    SpreadReport log_spread;
    /// Log-scale range and standard deviation relative to the first base.
    double log_range_ratio;
    double log_std_ratio;
};

[[nodiscard]] std::vector<BaseChangeEntry> base_change_audit(const AnalyticDistribution& dist,
                                                             std::span<const Base> bases);

/// Distance from Benford of log_b X_k, X_k the Benford variable on decade k.
[[nodiscard]] DistanceReport log_of_benford_audit(int k, Base base = kDecimal);

// --- Mixtures -----------------------------------------------------------------

/// A seeded sampler from the mixture registry.
///
/// Registry ids and parameters:
///   uniform          T          uniform on (0, T)
///   exponential      lambda     rate lambda
///   lognormal        mu, sigma  exp(mu + sigma Z)
///   pareto           xm, a      xm U^(-1/a)
///   power_of_uniform a [, base] base^(a U), base defaults to 10
struct MixtureComponent {
    std::string sampler;
    std::map<std::string, double> params;
};

/// Throws ConfigError for an unknown id or missing/invalid parameters.
void validate_component(const MixtureComponent& component);

[[nodiscard]] std::vector<double> draw_component(const MixtureComponent& component, std::size_t n,
                                                 std::uint64_t seed);

struct MixtureSpec {
    std::vector<MixtureComponent> components;
    std::size_t samples_per_component = 0;
    std::uint64_t seed = 0;
};

/// `count` components with sampler and parameters drawn from fixed ranges:
/// uniform T = 10^U(0,6); exponential lambda = 10^U(-3,3);
/// lognormal mu = ln(10) U(-3,3), sigma = U(0.25,2);
/// pareto xm = 10^U(0,3), a = U(0.5,3); power_of_uniform a = U(0.25,4).
[[nodiscard]] MixtureSpec random_mixture(std::size_t count, std::size_t samples_per_component, std::uint64_t seed);

struct TracePoint {
    std::size_t n_components;
    std::size_t n_samples;
    double ks;
    double chisq;
    int dof;
};

/// Conformance of the pool after each component is added. Component i is
/// drawn with seed (spec.seed XOR i).
[[nodiscard]] std::vector<TracePoint> mixture_experiment(const MixtureSpec& spec, Base base);

} // namespace benford
