#include "benford/metrics.hpp"

#include "benford/errors.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

namespace benford {

namespace {

struct Candidate {
    double s;
    double deviation;
};

// Keeps the first strictly larger |deviation|, scanning s in increasing order.
class ArgMax {
public:
    void offer(double s, double deviation) {
        const double mag = std::abs(deviation);
        if (mag > best_.deviation || (mag == best_.deviation && s < best_.s)) {
            best_ = {s, mag};
        }
    }
    [[nodiscard]] KsResult result() const { return {best_.deviation, best_.s}; }

private:
    Candidate best_{0.0, 0.0};
};

// Critical point of g(s) = c1 b^s + (c2 - 1) s + c3, if it exists.
bool critical_point(const Piece& p, const Base& base, double& s_out) {
    if (p.c1 == 0.0) return false;
    const double target = (1.0 - p.c2) / (p.c1 * base.ln());
    if (!(target > 0.0)) return false;
    s_out = std::log(target) / base.ln();
    return std::isfinite(s_out);
}

// Antiderivative of g(s) = c1 b^s + (c2 - 1) s + c3.
double primitive(const Piece& p, const Base& base, double s) {
    const double expo = p.c1 == 0.0 ? 0.0 : p.c1 * std::pow(base.as_double(), s) / base.ln();
    return expo + 0.5 * (p.c2 - 1.0) * s * s + p.c3 * s;
}

double deviation(const Piece& p, const Base& base, double s) { return p(s, base) - s; }

// Root of g on [a, b] given g(a), g(b) of opposite sign and g monotone there.
// Bisection runs until the bracket cannot shrink, so the result is the same
// double on every run.
double bracketed_root(const Piece& p, const Base& base, double a, double b) {
    double ga = deviation(p, base, a);
    for (int i = 0; i < 200; ++i) {
        const double mid = 0.5 * (a + b);
        if (mid <= a || mid >= b) break;
        const double gm = deviation(p, base, mid);
        if (gm == 0.0) return mid;
        if ((gm < 0.0) == (ga < 0.0)) {
            a = mid;
            ga = gm;
        } else {
            b = mid;
        }
    }
    return 0.5 * (a + b);
}

double abs_integral_piece(const Piece& p, const Base& base, double lo, double hi) {
    std::vector<double> cuts{lo};
    if (p.c1 == 0.0) {
        const double slope = p.c2 - 1.0;
        if (slope != 0.0) {
            const double root = -p.c3 / slope;
            if (root > lo && root < hi) cuts.push_back(root);
        }
    } else {
        std::vector<double> monotone{lo};
        double crit = 0.0;
        if (critical_point(p, base, crit) && crit > lo && crit < hi) monotone.push_back(crit);
        monotone.push_back(hi);
        for (std::size_t i = 0; i + 1 < monotone.size(); ++i) {
            const double a = monotone[i], b = monotone[i + 1];
            const double ga = deviation(p, base, a), gb = deviation(p, base, b);
            if ((ga < 0.0 && gb > 0.0) || (ga > 0.0 && gb < 0.0)) {
                cuts.push_back(bracketed_root(p, base, a, b));
            }
            if (i + 2 < monotone.size()) cuts.push_back(b);
        }
    }
    cuts.push_back(hi);

    double total = 0.0;
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
        total += std::abs(primitive(p, base, cuts[i + 1]) - primitive(p, base, cuts[i]));
    }
    return total;
}

// Integral of |c - s| over [lo, hi].
double abs_integral_constant(double c, double lo, double hi) {
    auto signed_part = [c](double a, double b) { return c * (b - a) - 0.5 * (b * b - a * a); };
    if (c <= lo || c >= hi) return std::abs(signed_part(lo, hi));
    return std::abs(signed_part(lo, c)) + std::abs(signed_part(c, hi));
}

} // namespace

KsResult ks_distance(const ModOneCdf& cdf) {
    ArgMax best;
    const auto bps = cdf.breakpoints();
    const auto pieces = cdf.pieces();
    const Base& base = cdf.base();

    if (cdf.is_step()) {
        for (std::size_t i = 0; i < pieces.size(); ++i) {
            const double s = bps[i];
            const double before = i == 0 ? 0.0 : pieces[i - 1].c3;
            best.offer(s, before - s);
            best.offer(s, pieces[i].c3 - s);
        }
        return best.result();
    }

    for (std::size_t i = 0; i < pieces.size(); ++i) {
        const Piece& p = pieces[i];
        const double lo = bps[i], hi = bps[i + 1];
        best.offer(lo, deviation(p, base, lo));
        double crit = 0.0;
        if (critical_point(p, base, crit) && crit > lo && crit < hi) {
            best.offer(crit, deviation(p, base, crit));
        }
        best.offer(hi, deviation(p, base, hi));
    }
    return best.result();
}

double wasserstein_distance(const ModOneCdf& cdf) {
    const auto bps = cdf.breakpoints();
    const auto pieces = cdf.pieces();
    double total = 0.0;
    for (std::size_t i = 0; i < pieces.size(); ++i) {
        total += cdf.is_step() ? abs_integral_constant(pieces[i].c3, bps[i], bps[i + 1])
                               : abs_integral_piece(pieces[i], cdf.base(), bps[i], bps[i + 1]);
    }
    return total;
}

DistanceReport distance_report(const ModOneCdf& cdf) {
    const auto ks = ks_distance(cdf);
    return {ks.value, ks.argmax, wasserstein_distance(cdf)};
}

double empirical_ks_mod_one(std::span<const double> mantissas) {
    if (mantissas.empty()) throw DomainError("empirical KS needs at least one sample");
    std::vector<double> u(mantissas.begin(), mantissas.end());
    std::sort(u.begin(), u.end());
    const double n = static_cast<double>(u.size());
    double d = 0.0;
    for (std::size_t i = 0; i < u.size(); ++i) {
        const double rank = static_cast<double>(i + 1);
        d = std::max({d, rank / n - u[i], u[i] - (rank - 1.0) / n});
    }
    return d;
}

double empirical_ks(std::span<const double> samples, Base base) {
    std::vector<double> u;
    u.reserve(samples.size());
    for (std::size_t i = 0; i < samples.size(); ++i) {
        if (!(samples[i] > 0.0) || !std::isfinite(samples[i])) {
            throw DomainError("sample " + std::to_string(i) + " is not a positive finite value");
        }
        u.push_back(log_mantissa(samples[i], base));
    }
    return empirical_ks_mod_one(u);
}

ChiSquare first_digit_chisq_from_counts(std::span<const std::size_t> counts, Base base) {
    if (counts.size() != static_cast<std::size_t>(base.value() - 1)) {
        throw DomainError("expected one count per nonzero digit");
    }
    double n = 0.0;
    for (auto c : counts) n += static_cast<double>(c);
    if (n == 0.0) throw DomainError("chi-square needs at least one observation");
    double stat = 0.0;
    for (std::size_t i = 0; i < counts.size(); ++i) {
        const double expected = n * benford_first_digit_pmf(static_cast<int>(i) + 1, base);
        const double diff = static_cast<double>(counts[i]) - expected;
        stat += diff * diff / expected;
    }
    return {stat, base.value() - 2};
}

ChiSquare first_digit_chisq(std::span<const double> samples, Base base) {
    std::vector<std::size_t> counts(static_cast<std::size_t>(base.value() - 1), 0);
    for (std::size_t i = 0; i < samples.size(); ++i) {
        if (!(samples[i] > 0.0) || !std::isfinite(samples[i])) {
            throw DomainError("sample " + std::to_string(i) + " is not a positive finite value");
        }
        ++counts[static_cast<std::size_t>(first_digit(samples[i], base) - 1)];
    }
    return first_digit_chisq_from_counts(counts, base);
}

double dkw_bound(std::size_t n, double alpha) {
    return std::sqrt(std::log(2.0 / alpha) / (2.0 * static_cast<double>(n)));
}

} // namespace benford
