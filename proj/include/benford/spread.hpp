#pragma once

#include "benford/digits.hpp"
#include "benford/modone.hpp"

#include <span>
#include <string_view>

namespace benford {

enum class Scale { raw, log, loglog };

[[nodiscard]] std::string_view to_string(Scale scale);
[[nodiscard]] Scale parse_scale(std::string_view name);

/// One dispersion value. `infinite` marks an unbounded measure (value is then +inf).
struct Measure {
    double value = 0.0;
    bool estimated = false;
    bool infinite = false;
};

/// Dispersion of X, log_b X or log_b log_b X.
///
/// gini_mean_difference is the unnormalized mean absolute difference E|X - X'|,
/// not the normalized Gini index.
struct SpreadReport {
    Scale scale = Scale::raw;
    int base = 10;
    double alpha = 0.25;
    Measure range;
    Measure quantile_spread; ///< Q(1 - alpha) - Q(alpha)
    Measure std_dev;
    Measure gini_mean_difference;
};

/// Closed-form dispersion of an analytic distribution on the requested scale.
[[nodiscard]] SpreadReport spread_analytic(const AnalyticDistribution& dist, Scale scale, double alpha,
                                           Base base = kDecimal);

/// Sample dispersion: type-7 quantiles, n - 1 standard deviation,
/// sorted-sum Gini mean difference.
[[nodiscard]] SpreadReport spread_sample(std::span<const double> samples, Scale scale, double alpha,
                                         Base base = kDecimal);

/// Type-7 (linear interpolation) quantile of sorted data.
[[nodiscard]] double quantile_type7(std::span<const double> sorted, double p);

} // namespace benford
