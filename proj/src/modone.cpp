#include "benford/modone.hpp"

#include "benford/errors.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace benford {

namespace {

double frac(double x) {
    const double f = x - std::floor(x);
    return f < 1.0 ? f : 0.0;
}

template <class... Ts>
struct Overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

void require(bool ok, const std::string& what) {
    if (!ok) throw DomainError(what);
}

// Coefficients of H(x, s) = |{t in (0, x] : frac(log_b t) <= s}| as a function
// of s, on either side of the phase of x. With x = mant * b^e:
//   s <  phase: b^e * ((b^s - 1)/(b - 1) + b^s - 1)
//   s >= phase: b^e * ((b^s - 1)/(b - 1) + mant - 1)
struct DecadeFold {
    double phase = 0.0;
    double below_c1 = 0.0, below_c3 = 0.0;
    double above_c1 = 0.0, above_c3 = 0.0;

    [[nodiscard]] Piece at(double s_mid) const {
        return s_mid < phase ? Piece{below_c1, 0.0, below_c3} : Piece{above_c1, 0.0, above_c3};
    }
};

DecadeFold fold_from(double mant, double scale, double phase, double b) {
    const double g = 1.0 / (b - 1.0);
    DecadeFold f;
    f.phase = phase;
    f.below_c1 = scale * (g + 1.0);
    f.below_c3 = -scale * (g + 1.0);
    f.above_c1 = scale * g;
    f.above_c3 = scale * (mant - 1.0 - g);
    return f;
}

DecadeFold fold_of(double x, const Base& base) {
    if (x == 0.0) return {};
    const auto sig = significand(x, base);
    const double phase = std::log(sig.mantissa) / base.ln();
    return fold_from(sig.mantissa, std::pow(base.as_double(), sig.exponent), phase, base.as_double());
}

std::vector<double> sorted_breaks(std::initializer_list<double> interior) {
    std::vector<double> bps{0.0, 1.0};
    for (double v : interior) {
        if (v > 0.0 && v < 1.0) bps.push_back(v);
    }
    std::sort(bps.begin(), bps.end());
    bps.erase(std::unique(bps.begin(), bps.end()), bps.end());
    return bps;
}

ModOneCdf fold_difference(const DecadeFold& hi, const DecadeFold& lo, double length, const Base& base) {
    auto bps = sorted_breaks({hi.phase, lo.phase});
    std::vector<Piece> pieces;
    pieces.reserve(bps.size() - 1);
    for (std::size_t i = 0; i + 1 < bps.size(); ++i) {
        const double mid = 0.5 * (bps[i] + bps[i + 1]);
        const Piece a = hi.at(mid);
        const Piece c = lo.at(mid);
        pieces.push_back({(a.c1 - c.c1) / length, 0.0, (a.c3 - c.c3) / length});
    }
    return ModOneCdf::continuous(base, std::move(bps), std::move(pieces));
}

} // namespace

// ---------------------------------------------------------------------------
// AnalyticDistribution

AnalyticDistribution::AnalyticDistribution(UniformContinuous v) : v_(v) {
    require(v.upper > 0.0 && std::isfinite(v.upper), "UniformContinuous requires 0 < T < inf");
}

AnalyticDistribution::AnalyticDistribution(PowerOfUniform v) : v_(v) {
    require(v.exponent > 0.0 && std::isfinite(v.exponent), "PowerOfUniform requires a > 0");
}

AnalyticDistribution::AnalyticDistribution(BenfordDecade v) : v_(v) {}

AnalyticDistribution::AnalyticDistribution(UniformIntegers v) : v_(v) {
    require(v.count >= 1, "UniformIntegers requires N >= 1");
}

double AnalyticDistribution::cdf(double x) const {
    return std::visit(
        Overloaded{
            [x](const UniformContinuous& u) { return std::clamp(x / u.upper, 0.0, 1.0); },
            [x](const PowerOfUniform& p) {
                if (x <= 1.0) return 0.0;
                if (x >= std::pow(p.base.as_double(), p.exponent)) return 1.0;
                return std::clamp(std::log(x) / (p.exponent * p.base.ln()), 0.0, 1.0);
            },
            [x](const BenfordDecade& d) {
                if (x <= std::pow(d.base.as_double(), d.decade)) return 0.0;
                if (x >= std::pow(d.base.as_double(), d.decade + 1)) return 1.0;
                return std::clamp(std::log(x) / d.base.ln() - d.decade, 0.0, 1.0);
            },
            [x](const UniformIntegers& n) {
                if (x < 1.0) return 0.0;
                const double count = static_cast<double>(n.count);
                return std::min(std::floor(x), count) / count;
            },
        },
        v_);
}

double AnalyticDistribution::quantile(double p) const {
    require(p >= 0.0 && p <= 1.0, "quantile level must lie in [0, 1]");
    return std::visit(
        Overloaded{
            [p](const UniformContinuous& u) { return p * u.upper; },
            [p](const PowerOfUniform& w) { return std::pow(w.base.as_double(), w.exponent * p); },
            [p](const BenfordDecade& d) { return std::pow(d.base.as_double(), d.decade + p); },
            [p](const UniformIntegers& n) {
                const double count = static_cast<double>(n.count);
                return std::clamp(std::ceil(p * count), 1.0, count);
            },
        },
        v_);
}

double AnalyticDistribution::mean() const {
    return std::visit(
        Overloaded{
            [](const UniformContinuous& u) { return u.upper / 2.0; },
            [](const PowerOfUniform& w) {
                const double lambda = w.exponent * w.base.ln();
                return std::expm1(lambda) / lambda;
            },
            [](const BenfordDecade& d) {
                const double b = d.base.as_double();
                return std::pow(b, d.decade) * (b - 1.0) / d.base.ln();
            },
            [](const UniformIntegers& n) { return (static_cast<double>(n.count) + 1.0) / 2.0; },
        },
        v_);
}

double AnalyticDistribution::variance() const {
    return std::visit(
        Overloaded{
            [](const UniformContinuous& u) { return u.upper * u.upper / 12.0; },
            [](const PowerOfUniform& w) {
                const double lambda = w.exponent * w.base.ln();
                const double m = std::expm1(lambda) / lambda;
                return std::expm1(2.0 * lambda) / (2.0 * lambda) - m * m;
            },
            [](const BenfordDecade& d) {
                const double b = d.base.as_double();
                const double ln_b = d.base.ln();
                const double scale = std::pow(b, d.decade);
                const double m = (b - 1.0) / ln_b;
                return scale * scale * ((b * b - 1.0) / (2.0 * ln_b) - m * m);
            },
            [](const UniformIntegers& n) {
                const double count = static_cast<double>(n.count);
                return (count * count - 1.0) / 12.0;
            },
        },
        v_);
}

double AnalyticDistribution::support_lower() const {
    return std::visit(Overloaded{
                          [](const UniformContinuous&) { return 0.0; },
                          [](const PowerOfUniform&) { return 1.0; },
                          [](const BenfordDecade& d) { return std::pow(d.base.as_double(), d.decade); },
                          [](const UniformIntegers&) { return 1.0; },
                      },
                      v_);
}

double AnalyticDistribution::support_upper() const {
    return std::visit(
        Overloaded{
            [](const UniformContinuous& u) { return u.upper; },
            [](const PowerOfUniform& w) { return std::pow(w.base.as_double(), w.exponent); },
            [](const BenfordDecade& d) { return std::pow(d.base.as_double(), d.decade + 1); },
            [](const UniformIntegers& n) { return static_cast<double>(n.count); },
        },
        v_);
}

bool AnalyticDistribution::is_discrete() const noexcept {
    return std::holds_alternative<UniformIntegers>(v_);
}

// ---------------------------------------------------------------------------
// ModOneCdf

double Piece::operator()(double s, const Base& base) const {
    const double expo = c1 == 0.0 ? 0.0 : c1 * std::pow(base.as_double(), s);
    return expo + c2 * s + c3;
}

ModOneCdf ModOneCdf::uniform(Base base) {
    return continuous(base, {0.0, 1.0}, {Piece{0.0, 1.0, 0.0}});
}

ModOneCdf ModOneCdf::continuous(Base base, std::vector<double> breakpoints, std::vector<Piece> pieces) {
    require(breakpoints.size() == pieces.size() + 1 && !pieces.empty(),
            "piece table needs one more breakpoint than pieces");
    require(breakpoints.front() == 0.0 && breakpoints.back() == 1.0, "breakpoints must span [0, 1]");
    require(std::is_sorted(breakpoints.begin(), breakpoints.end()), "breakpoints must be sorted");
    ModOneCdf cdf(base, false);
    cdf.breakpoints_ = std::move(breakpoints);
    cdf.pieces_ = std::move(pieces);
    return cdf;
}

ModOneCdf ModOneCdf::step(Base base, std::vector<Atom> atoms) {
    require(!atoms.empty(), "step CDF needs at least one atom");
    std::sort(atoms.begin(), atoms.end(), [](const Atom& a, const Atom& b) { return a.position < b.position; });
    std::vector<Atom> merged;
    for (const auto& a : atoms) {
        require(a.position >= 0.0 && a.position < 1.0 && a.mass > 0.0, "atoms must lie in [0, 1) with positive mass");
        if (!merged.empty() && merged.back().position == a.position) {
            merged.back().mass += a.mass;
        } else {
            merged.push_back(a);
        }
    }

    ModOneCdf cdf(base, true);
    if (merged.front().position > 0.0) {
        cdf.breakpoints_.push_back(0.0);
        cdf.pieces_.push_back({0.0, 0.0, 0.0});
    }
    double cumulative = 0.0;
    for (const auto& a : merged) {
        cumulative += a.mass;
        cdf.breakpoints_.push_back(a.position);
        cdf.pieces_.push_back({0.0, 0.0, cumulative});
    }
    cdf.breakpoints_.push_back(1.0);
    // Rounding in the running sum must not leave F(1-) short of 1.
    cdf.pieces_.back().c3 = 1.0;
    cdf.atoms_ = std::move(merged);
    return cdf;
}

std::size_t ModOneCdf::piece_index(double s) const {
    const auto it = std::upper_bound(breakpoints_.begin(), breakpoints_.end() - 1, s);
    const auto idx = static_cast<std::size_t>(it - breakpoints_.begin());
    return idx == 0 ? 0 : idx - 1;
}

double ModOneCdf::operator()(double s) const {
    if (s >= 1.0) return 1.0;
    if (s < 0.0) return 0.0;
    return std::clamp(pieces_[piece_index(s)](s, base_), 0.0, 1.0);
}

double ModOneCdf::left_limit(double s) const {
    if (s <= 0.0) return 0.0;
    if (s > 1.0) return 1.0;
    if (!step_) return (*this)(std::min(s, 1.0));
    const auto it = std::lower_bound(breakpoints_.begin(), breakpoints_.end(), s);
    const auto idx = static_cast<std::size_t>(it - breakpoints_.begin());
    return idx == 0 ? 0.0 : pieces_[idx - 1].c3;
}

// ---------------------------------------------------------------------------
// Constructions

ModOneCdf uniform_phase_cdf(double theta, Base base) {
    require(theta >= 0.0 && theta < 1.0, "phase must lie in [0, 1)");
    const double mant = std::pow(base.as_double(), theta);
    const DecadeFold top = fold_from(mant, 1.0, theta, base.as_double());
    return fold_difference(top, DecadeFold{}, mant, base);
}

ModOneCdf log_uniform_interval_cdf(double lo, double hi, Base base) {
    require(lo >= 0.0 && hi > lo && std::isfinite(hi), "log of uniform needs 0 <= lo < hi < inf");
    return fold_difference(fold_of(hi, base), fold_of(lo, base), hi - lo, base);
}

ModOneCdf wrapped_uniform_cdf(double lo, double hi, Base base) {
    require(hi > lo && std::isfinite(lo) && std::isfinite(hi), "wrapped uniform needs lo < hi");
    const double length = hi - lo;
    const double n_lo = std::floor(lo), f_lo = frac(lo);
    const double n_hi = std::floor(hi), f_hi = frac(hi);
    // G(x, s) = |{t in [0, x] : frac(t) <= s}| = floor(x) s + min(frac(x), s)
    auto bps = sorted_breaks({f_lo, f_hi});
    std::vector<Piece> pieces;
    for (std::size_t i = 0; i + 1 < bps.size(); ++i) {
        const double mid = 0.5 * (bps[i] + bps[i + 1]);
        const double slope_hi = n_hi + (mid < f_hi ? 1.0 : 0.0);
        const double slope_lo = n_lo + (mid < f_lo ? 1.0 : 0.0);
        const double icpt_hi = mid < f_hi ? 0.0 : f_hi;
        const double icpt_lo = mid < f_lo ? 0.0 : f_lo;
        pieces.push_back({0.0, (slope_hi - slope_lo) / length, (icpt_hi - icpt_lo) / length});
    }
    return ModOneCdf::continuous(base, std::move(bps), std::move(pieces));
}

ModOneCdf log_mod_one(const AnalyticDistribution& dist, Base base) {
    return std::visit(
        Overloaded{
            [&](const UniformContinuous& u) {
                return uniform_phase_cdf(log_mantissa(u.upper, base), base);
            },
            [&](const PowerOfUniform& w) {
                const double span = w.base == base ? w.exponent : w.exponent * w.base.ln() / base.ln();
                return wrapped_uniform_cdf(0.0, span, base);
            },
            [&](const BenfordDecade& d) {
                if (d.base == base) return ModOneCdf::uniform(base);
                const double r = d.base.ln() / base.ln();
                return wrapped_uniform_cdf(d.decade * r, (d.decade + 1) * r, base);
            },
            [&](const UniformIntegers& n) {
                if (n.count > kMaxExactAtoms) {
                    throw CapacityError("UniformIntegers(" + std::to_string(n.count) + ") exceeds the " +
                                        std::to_string(kMaxExactAtoms) +
                                        "-atom exact budget; use leading_one_fraction for counting");
                }
                std::vector<Atom> atoms;
                atoms.reserve(n.count);
                const double mass = 1.0 / static_cast<double>(n.count);
                for (std::uint64_t j = 1; j <= n.count; ++j) {
                    atoms.push_back({log_mantissa(static_cast<double>(j), base), mass});
                }
                return ModOneCdf::step(base, std::move(atoms));
            },
        },
        dist.variant());
}

ModOneCdf shift_mod_one(const ModOneCdf& cdf, double delta) {
    const double d = frac(delta);
    if (d == 0.0) return cdf;

    if (cdf.is_step()) {
        std::vector<Atom> shifted;
        shifted.reserve(cdf.atoms().size());
        for (const auto& a : cdf.atoms()) {
            double p = a.position + d;
            if (p >= 1.0) p -= 1.0;
            shifted.push_back({p >= 1.0 ? 0.0 : p, a.mass});
        }
        return ModOneCdf::step(cdf.base(), std::move(shifted));
    }

    // s <  d: F'(s) = F(s + 1 - d) - F(1 - d)
    // s >= d: F'(s) = F(s - d) + 1 - F(1 - d)
    const double tail_start = 1.0 - d;
    const double f_tail = cdf(tail_start);
    std::vector<double> bps{0.0, d, 1.0};
    for (double bp : cdf.breakpoints()) {
        double moved = bp + d;
        if (moved >= 1.0) moved -= 1.0;
        if (moved > 0.0 && moved < 1.0) bps.push_back(moved);
    }
    std::sort(bps.begin(), bps.end());
    bps.erase(std::unique(bps.begin(), bps.end()), bps.end());

    const double b = cdf.base().as_double();
    const auto src_bps = cdf.breakpoints();
    std::vector<Piece> pieces;
    for (std::size_t i = 0; i + 1 < bps.size(); ++i) {
        const double mid = 0.5 * (bps[i] + bps[i + 1]);
        const double offset = mid < d ? tail_start : -d;
        const double level = mid < d ? -f_tail : 1.0 - f_tail;
        const double t = mid + offset;
        const auto it = std::upper_bound(src_bps.begin(), src_bps.end() - 1, t);
        const Piece& src = cdf.pieces()[static_cast<std::size_t>(it - src_bps.begin()) - 1];
        pieces.push_back({src.c1 * std::pow(b, offset), src.c2, src.c2 * offset + src.c3 + level});
    }
    return ModOneCdf::continuous(cdf.base(), std::move(bps), std::move(pieces));
}

// ---------------------------------------------------------------------------
// Sampling

UniformStream::UniformStream(std::uint64_t seed) : engine_(seed) {}

double UniformStream::next() {
    // 53 random bits, offset by half a step so 0 and 1 are never produced.
    const auto bits = engine_() >> 11U;
    return (static_cast<double>(bits) + 0.5) * 0x1.0p-53;
}

std::vector<double> sample(const AnalyticDistribution& dist, std::size_t n, std::uint64_t seed) {
    require(n >= 1, "sample size must be at least 1");
    UniformStream stream(seed);
    std::vector<double> out;
    out.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double u = stream.next();
        out.push_back(std::visit(
            Overloaded{
                [u](const UniformContinuous& v) { return u * v.upper; },
                [u](const PowerOfUniform& v) { return std::pow(v.base.as_double(), v.exponent * u); },
                [u](const BenfordDecade& v) { return std::pow(v.base.as_double(), v.decade + u); },
                [u](const UniformIntegers& v) {
                    const double count = static_cast<double>(v.count);
                    return std::clamp(std::ceil(u * count), 1.0, count);
                },
            },
            dist.variant()));
    }
    return out;
}

} // namespace benford
