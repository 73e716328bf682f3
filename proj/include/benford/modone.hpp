#pragma once

#include "benford/digits.hpp"

#include <cstdint>
#include <random>
#include <span>
#include <variant>
#include <vector>

namespace benford {

/// Uniform on (0, upper).
struct UniformContinuous {
    double upper;
};

/// X = b^(a Y) with Y uniform on (0, 1).
struct PowerOfUniform {
    double exponent;
    Base base;
};

/// Density 1/(x ln b) on (b^k, b^(k+1)).
struct BenfordDecade {
    int decade;
    Base base;
};

/// Uniform on the integers {1, ..., N}.
struct UniformIntegers {
    std::uint64_t count;
};

/// Closed-form positive distribution with exact CDF, quantile and moments.
class AnalyticDistribution {
public:
    using Variant = std::variant<UniformContinuous, PowerOfUniform, BenfordDecade, UniformIntegers>;

    AnalyticDistribution(UniformContinuous v);
    AnalyticDistribution(PowerOfUniform v);
    AnalyticDistribution(BenfordDecade v);
    AnalyticDistribution(UniformIntegers v);

    [[nodiscard]] const Variant& variant() const noexcept { return v_; }

    [[nodiscard]] double cdf(double x) const;
    /// Left-continuous inverse; p in [0, 1].
    [[nodiscard]] double quantile(double p) const;
    [[nodiscard]] double mean() const;
    [[nodiscard]] double variance() const;
    [[nodiscard]] double support_lower() const;
    [[nodiscard]] double support_upper() const;
    [[nodiscard]] bool is_discrete() const noexcept;

private:
    Variant v_;
};

/// One piece of a mod-1 CDF: F(s) = c1 * b^s + c2 * s + c3.
struct Piece {
    double c1 = 0.0;
    double c2 = 0.0;
    double c3 = 0.0;

    [[nodiscard]] double operator()(double s, const Base& base) const;
};

/// Point mass of a step CDF on [0, 1).
struct Atom {
    double position;
    double mass;
};

/// CDF of a random variable on [0, 1), stored as a piece table.
///
/// breakpoints has pieces.size() + 1 entries running from 0 to 1; piece i
/// covers [breakpoints[i], breakpoints[i+1]). Step CDFs keep their atoms
/// and use constant pieces, so evaluation is right-continuous.
class ModOneCdf {
public:
    static ModOneCdf uniform(Base base);
    static ModOneCdf continuous(Base base, std::vector<double> breakpoints, std::vector<Piece> pieces);
    /// Atoms need not be sorted or merged; masses must sum to 1.
    static ModOneCdf step(Base base, std::vector<Atom> atoms);

    [[nodiscard]] double operator()(double s) const;
    /// lim F(t) as t -> s from below.
    [[nodiscard]] double left_limit(double s) const;

    [[nodiscard]] const Base& base() const noexcept { return base_; }
    [[nodiscard]] bool is_step() const noexcept { return step_; }
    [[nodiscard]] std::span<const double> breakpoints() const noexcept { return breakpoints_; }
    [[nodiscard]] std::span<const Piece> pieces() const noexcept { return pieces_; }
    [[nodiscard]] std::span<const Atom> atoms() const noexcept { return atoms_; }

private:
    ModOneCdf(Base base, bool step) : base_(base), step_(step) {}
    [[nodiscard]] std::size_t piece_index(double s) const;

    Base base_;
    bool step_;
    std::vector<double> breakpoints_;
    std::vector<Piece> pieces_;
    std::vector<Atom> atoms_;
};

/// Largest N for which UniformIntegers keeps exact atoms.
inline constexpr std::uint64_t kMaxExactAtoms = 1'000'000;

/// Exact CDF of frac(log_b X).
[[nodiscard]] ModOneCdf log_mod_one(const AnalyticDistribution& dist, Base base);

/// Mod-1 law of log_b X for X uniform on (0, b^theta); theta in [0, 1).
[[nodiscard]] ModOneCdf uniform_phase_cdf(double theta, Base base);

/// Mod-1 law of log_b U for U uniform on (lo, hi), 0 <= lo < hi.
[[nodiscard]] ModOneCdf log_uniform_interval_cdf(double lo, double hi, Base base);

/// Mod-1 law of U for U uniform on (lo, hi).
[[nodiscard]] ModOneCdf wrapped_uniform_cdf(double lo, double hi, Base base);

/// CDF of frac(S + delta) for S distributed by cdf.
[[nodiscard]] ModOneCdf shift_mod_one(const ModOneCdf& cdf, double delta);

/// Deterministic stream of uniforms in the open interval (0, 1).
class UniformStream {
public:
    explicit UniformStream(std::uint64_t seed);
    double next();

private:
    std::mt19937_64 engine_;
};

/// n i.i.d. draws by inverse-CDF sampling from a seeded stream.
[[nodiscard]] std::vector<double> sample(const AnalyticDistribution& dist, std::size_t n, std::uint64_t seed);

} // namespace benford
