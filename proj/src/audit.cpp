#include "benford/audit.hpp"

#include "benford/errors.hpp"
#include "benford/golden.hpp"

#include <boost/math/special_functions/erf.hpp>

#include <algorithm>
#include <cmath>
#include <string>

namespace benford {

namespace {

constexpr double kRefineTolerance = 1e-10;

double wrap_phase(double theta) {
    const double f = theta - std::floor(theta);
    return f < 1.0 ? f : 0.0;
}

double param(const MixtureComponent& c, const std::string& name) {
    const auto it = c.params.find(name);
    if (it == c.params.end()) {
        throw ConfigError("sampler '" + c.sampler + "' requires parameter '" + name + "'");
    }
    return it->second;
}

void require_positive(const MixtureComponent& c, const std::string& name) {
    const double v = param(c, name);
    if (!(v > 0.0) || !std::isfinite(v)) {
        throw ConfigError("sampler '" + c.sampler + "' parameter '" + name + "' must be positive and finite");
    }
}

} // namespace

double phase_distance(double theta, Base base) {
    return ks_distance(uniform_phase_cdf(wrap_phase(theta), base)).value;
}

double uniform_upper_distance(double upper, Base base) {
    return ks_distance(log_mod_one(AnalyticDistribution(UniformContinuous{upper}), base)).value;
}

double prop1_closed_form() {
    const long double ln10 = std::log(10.0L);
    const long double value =
        (-9.0L + ln10 + 9.0L * std::log(9.0L) - 9.0L * std::log(ln10)) / (18.0L * ln10);
    return static_cast<double>(value);
}

PhaseMinimum minimize_over_phase(Base base, std::size_t grid_size) {
    if (grid_size < 16) throw DomainError("phase grid needs at least 16 points");
    std::size_t best = 0;
    double best_value = phase_distance(0.0, base);
    const double step = 1.0 / static_cast<double>(grid_size);
    for (std::size_t i = 1; i < grid_size; ++i) {
        const double d = phase_distance(static_cast<double>(i) * step, base);
        if (d < best_value) {
            best_value = d;
            best = i;
        }
    }
    const double centre = static_cast<double>(best) * step;
    // D is 1-periodic, so the bracket may cross 0 or 1.
    const auto m = golden_section_minimize([&](double t) { return phase_distance(t, base); }, centre - step,
                                           centre + step, kRefineTolerance);
    if (m.value < best_value) return {wrap_phase(m.x), m.value};
    return {centre, best_value};
}

Prop1Bound prop1_bound(Base base) {
    if (base.value() == 10) return {prop1_closed_form(), true};
    return {minimize_over_phase(base).d_star, false};
}

Prop1Curve prop1_curve(Base base, std::size_t grid_size) {
    if (grid_size < 16) throw DomainError("prop1 curve needs grid_size >= 16");
    Prop1Curve curve{base.value(), {}, {}, 0.0, 0.0, prop1_bound(base)};
    curve.thetas.reserve(grid_size);
    curve.distances.reserve(grid_size);
    const double step = 1.0 / static_cast<double>(grid_size);
    for (std::size_t i = 0; i < grid_size; ++i) {
        const double theta = static_cast<double>(i) * step;
        curve.thetas.push_back(theta);
        curve.distances.push_back(phase_distance(theta, base));
    }
    const auto best = static_cast<std::size_t>(
        std::min_element(curve.distances.begin(), curve.distances.end()) - curve.distances.begin());
    const double centre = curve.thetas[best];
    const auto m = golden_section_minimize([&](double t) { return phase_distance(t, base); }, centre - step,
                                           centre + step, kRefineTolerance);
    if (m.value < curve.distances[best]) {
        curve.theta_star = wrap_phase(m.x);
        curve.d_star = m.value;
    } else {
        curve.theta_star = centre;
        curve.d_star = curve.distances[best];
    }
    return curve;
}

Rational leading_one_fraction(unsigned n, Base base) {
    using boost::multiprecision::cpp_int;
    const cpp_int b = base.value();
    const cpp_int top = 2 * boost::multiprecision::pow(b, n);
    cpp_int count = 0;
    for (cpp_int lo = 1; lo <= top; lo *= b) {
        const cpp_int hi = std::min<cpp_int>(2 * lo - 1, top);
        count += hi - lo + 1;
    }
    return Rational(count, top);
}

NonmonotonicityReport nonmonotonicity_report(Base base) {
    const AnalyticDistribution x(PowerOfUniform{1.0, base});
    const AnalyticDistribution z(PowerOfUniform{1.5, base});
    NonmonotonicityReport report{base.value(), {}, distance_report(log_mod_one(x, base)),
                                 distance_report(log_mod_one(z, base))};
    for (Scale scale : {Scale::raw, Scale::log}) {
        const auto sx = spread_analytic(x, scale, 0.25, base);
        const auto sz = spread_analytic(z, scale, 0.25, base);
        report.rows.push_back({"range", scale, sx.range.value, sz.range.value});
        report.rows.push_back({"quantile_spread", scale, sx.quantile_spread.value, sz.quantile_spread.value});
        report.rows.push_back({"std_dev", scale, sx.std_dev.value, sz.std_dev.value});
        report.rows.push_back(
            {"gini_mean_difference", scale, sx.gini_mean_difference.value, sz.gini_mean_difference.value});
    }
    return report;
}

std::vector<BaseChangeEntry> base_change_audit(const AnalyticDistribution& dist, std::span<const Base> bases) {
    std::vector<BaseChangeEntry> out;
    for (const Base& base : bases) {
        auto spread = spread_analytic(dist, Scale::log, 0.25, base);
        out.push_back({base.value(), distance_report(log_mod_one(dist, base)), spread, 1.0, 1.0});
    }
    if (!out.empty()) {
        const auto& first = out.front().log_spread;
        for (auto& e : out) {
            e.log_range_ratio = e.log_spread.range.infinite ? std::nan("")
                                                            : e.log_spread.range.value / first.range.value;
            e.log_std_ratio = e.log_spread.std_dev.value / first.std_dev.value;
        }
    }
    return out;
}

DistanceReport log_of_benford_audit(int k, Base base) {
    if (k < 1) {
        throw DomainError("log-of-Benford audit needs decade k >= 1; for k = " + std::to_string(k) +
                          " log_b X_k takes values at or below 0 where its logarithm is undefined");
    }
    // log_b X_k is uniform on (k, k + 1).
    return distance_report(log_uniform_interval_cdf(static_cast<double>(k), static_cast<double>(k) + 1.0, base));
}

void validate_component(const MixtureComponent& c) {
    if (c.sampler == "uniform") {
        require_positive(c, "T");
    } else if (c.sampler == "exponential") {
        require_positive(c, "lambda");
    } else if (c.sampler == "lognormal") {
        const double mu = param(c, "mu");
        if (!std::isfinite(mu)) throw ConfigError("sampler 'lognormal' parameter 'mu' must be finite");
        require_positive(c, "sigma");
    } else if (c.sampler == "pareto") {
        require_positive(c, "xm");
        require_positive(c, "a");
    } else if (c.sampler == "power_of_uniform") {
        require_positive(c, "a");
        if (c.params.count("base") != 0) {
            const double b = c.params.at("base");
            if (b != std::floor(b) || b < 2.0) throw ConfigError("sampler 'power_of_uniform' base must be an integer >= 2");
        }
    } else {
        throw ConfigError("unknown sampler id '" + c.sampler + "'");
    }
}

std::vector<double> draw_component(const MixtureComponent& c, std::size_t n, std::uint64_t seed) {
    validate_component(c);
    UniformStream stream(seed);
    std::vector<double> out;
    out.reserve(n);
    if (c.sampler == "uniform") {
        const double t = param(c, "T");
        for (std::size_t i = 0; i < n; ++i) out.push_back(stream.next() * t);
    } else if (c.sampler == "exponential") {
        const double lambda = param(c, "lambda");
        for (std::size_t i = 0; i < n; ++i) out.push_back(-std::log(stream.next()) / lambda);
    } else if (c.sampler == "lognormal") {
        const double mu = param(c, "mu"), sigma = param(c, "sigma");
        for (std::size_t i = 0; i < n; ++i) {
            const double z = -std::sqrt(2.0) * boost::math::erfc_inv(2.0 * stream.next());
            out.push_back(std::exp(mu + sigma * z));
        }
    } else if (c.sampler == "pareto") {
        const double xm = param(c, "xm"), a = param(c, "a");
        for (std::size_t i = 0; i < n; ++i) out.push_back(xm * std::pow(stream.next(), -1.0 / a));
    } else {
        const double a = param(c, "a");
        const double b = c.params.count("base") != 0 ? c.params.at("base") : 10.0;
        for (std::size_t i = 0; i < n; ++i) out.push_back(std::pow(b, a * stream.next()));
    }
    return out;
}

MixtureSpec random_mixture(std::size_t count, std::size_t samples_per_component, std::uint64_t seed) {
    static const char* const kSamplers[] = {"uniform", "exponential", "lognormal", "pareto", "power_of_uniform"};
    UniformStream stream(seed ^ 0x9E3779B97F4A7C15ULL);
    auto between = [&](double lo, double hi) { return lo + (hi - lo) * stream.next(); };
    const double ln10 = std::log(10.0);

    MixtureSpec spec{{}, samples_per_component, seed};
    for (std::size_t i = 0; i < count; ++i) {
        const auto pick = std::min<std::size_t>(static_cast<std::size_t>(stream.next() * 5.0), 4);
        MixtureComponent c{kSamplers[pick], {}};
        switch (pick) {
        case 0:
            c.params["T"] = std::pow(10.0, between(0.0, 6.0));
            break;
        case 1:
            c.params["lambda"] = std::pow(10.0, between(-3.0, 3.0));
            break;
        case 2:
            c.params["mu"] = ln10 * between(-3.0, 3.0);
            c.params["sigma"] = between(0.25, 2.0);
            break;
        case 3:
            c.params["xm"] = std::pow(10.0, between(0.0, 3.0));
            c.params["a"] = between(0.5, 3.0);
            break;
        default:
            c.params["a"] = between(0.25, 4.0);
            break;
        }
        spec.components.push_back(std::move(c));
    }
    return spec;
}

std::vector<TracePoint> mixture_experiment(const MixtureSpec& spec, Base base) {
    if (spec.components.empty()) throw ConfigError("mixture needs at least one component");
    if (spec.samples_per_component < 1) throw ConfigError("samples_per_component must be at least 1");
    for (const auto& c : spec.components) validate_component(c);

    std::vector<double> pooled;
    std::vector<std::size_t> digit_counts(static_cast<std::size_t>(base.value() - 1), 0);
    std::vector<TracePoint> trace;
    for (std::size_t i = 0; i < spec.components.size(); ++i) {
        const auto draws = draw_component(spec.components[i], spec.samples_per_component, spec.seed ^ i);
        const auto mid = static_cast<std::ptrdiff_t>(pooled.size());
        for (double x : draws) {
            if (!(x > 0.0) || !std::isfinite(x)) continue; // underflow or overflow of extreme draws
            pooled.push_back(log_mantissa(x, base));
            ++digit_counts[static_cast<std::size_t>(first_digit(x, base) - 1)];
        }
        std::sort(pooled.begin() + mid, pooled.end());
        std::inplace_merge(pooled.begin(), pooled.begin() + mid, pooled.end());

        const auto chi = first_digit_chisq_from_counts(digit_counts, base);
        trace.push_back({i + 1, pooled.size(), empirical_ks_mod_one(pooled), chi.statistic, chi.dof});
    }
    return trace;
}

} // namespace benford
