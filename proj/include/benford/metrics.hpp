#pragma once

#include "benford/digits.hpp"
#include "benford/modone.hpp"

#include <span>

namespace benford {

/// Distances of a mod-1 CDF from the uniform (Benford) reference.
struct DistanceReport {
    double ks = 0.0;
    double ks_argmax = 0.0;
    double wasserstein = 0.0;
};

struct KsResult {
    double value;
    double argmax;
};

/// sup_s |F(s) - s|, located exactly from the piece table.
///
/// On an exponential-plus-linear piece the deviation has at most one interior
/// critical point, where c1 ln(b) b^s + c2 = 1. Step CDFs are checked at both
/// one-sided limits of every atom. Ties resolve to the smallest s.
[[nodiscard]] KsResult ks_distance(const ModOneCdf& cdf);

/// Integral over [0, 1] of |F(s) - s|.
[[nodiscard]] double wasserstein_distance(const ModOneCdf& cdf);

[[nodiscard]] DistanceReport distance_report(const ModOneCdf& cdf);

/// KS statistic of {frac(log_b x_i)} against the uniform law.
[[nodiscard]] double empirical_ks(std::span<const double> samples, Base base);

/// Same statistic for values already reduced to [0, 1).
[[nodiscard]] double empirical_ks_mod_one(std::span<const double> mantissas);

struct ChiSquare {
    double statistic;
    int dof;
};

/// Pearson chi-square of first-digit counts against Benford; dof = b - 2.
[[nodiscard]] ChiSquare first_digit_chisq(std::span<const double> samples, Base base);

/// Chi-square from precomputed first-digit counts (index d - 1 holds digit d).
[[nodiscard]] ChiSquare first_digit_chisq_from_counts(std::span<const std::size_t> counts, Base base);

/// Dvoretzky-Kiefer-Wolfowitz half-width: sqrt(ln(2/alpha) / (2n)).
[[nodiscard]] double dkw_bound(std::size_t n, double alpha = 0.01);

} // namespace benford
