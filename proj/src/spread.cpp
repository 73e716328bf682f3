#include "benford/spread.hpp"

#include "benford/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>
#include <vector>

namespace benford {

namespace {

template <class... Ts>
struct Overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr std::size_t kEstimateSamples = 1'000'000;

void check_alpha(double alpha) {
    if (!(alpha > 0.0 && alpha < 0.5)) {
        throw DomainError("quantile level alpha must satisfy 0 < alpha < 1/2, got " + std::to_string(alpha));
    }
}

SpreadReport make(Scale scale, const Base& base, double alpha, Measure range, Measure qs, Measure sd,
                  Measure gini) {
    return {scale, base.value(), alpha, range, qs, sd, gini};
}

// Uniform on an interval of the given length.
SpreadReport uniform_spread(double length, Scale scale, const Base& base, double alpha) {
    return make(scale, base, alpha, {length}, {(1.0 - 2.0 * alpha) * length}, {length / std::sqrt(12.0)},
                {length / 3.0});
}

// log_b(c U) for U uniform on (0, 1): -ln U is Exp(1), so sd = gini = 1/ln b.
SpreadReport log_of_uniform_from_zero(Scale scale, const Base& base, double alpha) {
    const double inv = 1.0 / base.ln();
    return make(scale, base, alpha, {kInf, false, true}, {std::log((1.0 - alpha) / alpha) * inv}, {inv}, {inv});
}

// log_b U for U uniform on (lo, hi), lo > 0.
SpreadReport log_of_uniform(double lo, double hi, Scale scale, const Base& base, double alpha) {
    const double length = hi - lo;
    const double inv = 1.0 / base.ln();
    auto m1 = [](double x) { return x * std::log(x) - x; };
    auto m2 = [](double x) {
        const double l = std::log(x);
        return x * l * l - 2.0 * x * l + 2.0 * x;
    };
    const double mean = (m1(hi) - m1(lo)) / length;
    const double var = std::max(0.0, (m2(hi) - m2(lo)) / length - mean * mean);
    const double log_ratio = std::log(hi / lo);
    const double gini = 2.0 * ((hi + lo) * length / 2.0 - lo * hi * log_ratio) / (length * length);
    const double qs = std::log((lo + (1.0 - alpha) * length) / (lo + alpha * length));
    return make(scale, base, alpha, {log_ratio * inv}, {qs * inv}, {std::sqrt(var) * inv}, {gini * inv});
}

// X = e^(lambda Y), Y uniform on (0, 1), multiplied by scale_factor.
SpreadReport exp_of_uniform(double lambda, double scale_factor, const Base& base, double alpha) {
    const double e = std::exp(lambda);
    const double em1 = std::expm1(lambda);
    const double mean = em1 / lambda;
    const double var = std::expm1(2.0 * lambda) / (2.0 * lambda) - mean * mean;
    // E|X - X'| = 2 int_0^1 p (1 - p) Q'(p) dp with Q(p) = e^(lambda p)
    const double gini = 2.0 * ((e + 1.0) / lambda - 2.0 * em1 / (lambda * lambda));
    const double qs = std::exp(lambda * (1.0 - alpha)) - std::exp(lambda * alpha);
    return make(Scale::raw, base, alpha, {scale_factor * em1}, {scale_factor * qs},
                {scale_factor * std::sqrt(std::max(var, 0.0))}, {scale_factor * gini});
}

std::vector<double> transform(std::span<const double> values, Scale scale, const Base& base) {
    std::vector<double> out;
    out.reserve(values.size());
    for (std::size_t i = 0; i < values.size(); ++i) {
        const double x = values[i];
        if (!std::isfinite(x)) throw DomainError("value at index " + std::to_string(i) + " is not finite");
        switch (scale) {
        case Scale::raw:
            out.push_back(x);
            break;
        case Scale::log:
            if (!(x > 0.0)) {
                throw DomainError("log scale needs positive values; index " + std::to_string(i) + " is " +
                                  std::to_string(x));
            }
            out.push_back(std::log(x) / base.ln());
            break;
        case Scale::loglog:
            if (!(x > 1.0)) {
                throw DomainError("log-log scale needs values above 1; index " + std::to_string(i) + " is " +
                                  std::to_string(x));
            }
            out.push_back(std::log(std::log(x) / base.ln()) / base.ln());
            break;
        }
    }
    return out;
}

SpreadReport sorted_spread(std::vector<double> v, Scale scale, const Base& base, double alpha) {
    std::sort(v.begin(), v.end());
    const std::size_t n = v.size();
    const double nd = static_cast<double>(n);

    long double sum = 0.0L;
    for (double x : v) sum += x;
    const long double mean = sum / nd;
    long double ss = 0.0L;
    for (double x : v) ss += (x - mean) * (x - mean);

    long double weighted = 0.0L;
    for (std::size_t i = 0; i < n; ++i) {
        weighted += static_cast<long double>(2.0 * static_cast<double>(i + 1) - nd - 1.0) * v[i];
    }
    const double gini = static_cast<double>(2.0L * weighted / (nd * (nd - 1.0)));

    return make(scale, base, alpha, {v.back() - v.front()},
                {quantile_type7(v, 1.0 - alpha) - quantile_type7(v, alpha)},
                {static_cast<double>(std::sqrt(ss / (nd - 1.0)))}, {std::max(gini, 0.0)});
}

} // namespace

std::string_view to_string(Scale scale) {
    switch (scale) {
    case Scale::raw:
        return "raw";
    case Scale::log:
        return "log";
    case Scale::loglog:
        return "loglog";
    }
    return "raw";
}

Scale parse_scale(std::string_view name) {
    if (name == "raw") return Scale::raw;
    if (name == "log") return Scale::log;
    if (name == "loglog") return Scale::loglog;
    throw ConfigError("unknown scale '" + std::string(name) + "'");
}

double quantile_type7(std::span<const double> sorted, double p) {
    if (sorted.empty()) throw DomainError("quantile of empty data");
    const double h = (static_cast<double>(sorted.size()) - 1.0) * p;
    const auto lo = static_cast<std::size_t>(std::floor(h));
    if (lo + 1 >= sorted.size()) return sorted.back();
    return sorted[lo] + (h - static_cast<double>(lo)) * (sorted[lo + 1] - sorted[lo]);
}

SpreadReport spread_sample(std::span<const double> samples, Scale scale, double alpha, Base base) {
    check_alpha(alpha);
    if (samples.size() < 2) throw DomainError("spread of a sample needs at least 2 values");
    return sorted_spread(transform(samples, scale, base), scale, base, alpha);
}

SpreadReport spread_analytic(const AnalyticDistribution& dist, Scale scale, double alpha, Base base) {
    check_alpha(alpha);

    if (scale == Scale::raw) {
        return std::visit(
            Overloaded{
                [&](const UniformContinuous& u) { return uniform_spread(u.upper, scale, base, alpha); },
                [&](const PowerOfUniform& w) {
                    auto r = exp_of_uniform(w.exponent * w.base.ln(), 1.0, base, alpha);
                    return r;
                },
                [&](const BenfordDecade& d) {
                    return exp_of_uniform(d.base.ln(), std::pow(d.base.as_double(), d.decade), base, alpha);
                },
                [&](const UniformIntegers& n) {
                    const double count = static_cast<double>(n.count);
                    const double qs = dist.quantile(1.0 - alpha) - dist.quantile(alpha);
                    return make(scale, base, alpha, {count - 1.0}, {qs}, {std::sqrt((count * count - 1.0) / 12.0)},
                                {(count * count - 1.0) / (3.0 * count)});
                },
            },
            dist.variant());
    }

    if (scale == Scale::log) {
        return std::visit(
            Overloaded{
                [&](const UniformContinuous&) { return log_of_uniform_from_zero(scale, base, alpha); },
                [&](const PowerOfUniform& w) {
                    return uniform_spread(w.exponent * w.base.ln() / base.ln(), scale, base, alpha);
                },
                [&](const BenfordDecade& d) { return uniform_spread(d.base.ln() / base.ln(), scale, base, alpha); },
                [&](const UniformIntegers& n) {
                    const double count = static_cast<double>(n.count);
                    const double qs =
                        (std::log(dist.quantile(1.0 - alpha)) - std::log(dist.quantile(alpha))) / base.ln();
                    if (n.count < 2) return make(scale, base, alpha, {0.0}, {0.0}, {0.0}, {0.0});
                    SpreadReport r;
                    if (n.count <= kMaxExactAtoms) {
                        std::vector<double> logs;
                        logs.reserve(n.count);
                        for (std::uint64_t j = 1; j <= n.count; ++j) {
                            logs.push_back(std::log(static_cast<double>(j)) / base.ln());
                        }
                        // Population moments over the full support, not sample estimates.
                        r = sorted_spread(std::move(logs), scale, base, alpha);
                        r.std_dev.value *= std::sqrt((count - 1.0) / count);
                        r.gini_mean_difference.value *= (count - 1.0) / count;
                    } else {
                        r = spread_sample(sample(dist, kEstimateSamples, 0), scale, alpha, base);
                        r.std_dev.estimated = true;
                        r.gini_mean_difference.estimated = true;
                    }
                    r.range = {std::log(count) / base.ln()};
                    r.quantile_spread = {qs};
                    return r;
                },
            },
            dist.variant());
    }

    return std::visit(
        Overloaded{
            [&](const UniformContinuous&) -> SpreadReport {
                throw DomainError("log-log spread undefined: uniform(0, T) has mass at or below 1");
            },
            [&](const PowerOfUniform&) { return log_of_uniform_from_zero(scale, base, alpha); },
            [&](const BenfordDecade& d) -> SpreadReport {
                if (d.decade < 0) {
                    throw DomainError("log-log spread undefined for decade " + std::to_string(d.decade) +
                                      ": support lies below 1");
                }
                if (d.decade == 0) return log_of_uniform_from_zero(scale, base, alpha);
                const double r = d.base.ln() / base.ln();
                return log_of_uniform(d.decade * r, (d.decade + 1) * r, scale, base, alpha);
            },
            [&](const UniformIntegers&) -> SpreadReport {
                throw DomainError("log-log spread undefined: the integer 1 has log 0");
            },
        },
        dist.variant());
}

} // namespace benford
