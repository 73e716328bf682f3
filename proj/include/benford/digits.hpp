#pragma once

#include <cstdint>
#include <span>

namespace benford {

/// Integer radix b >= 2.
class Base {
public:
    explicit Base(int radix);

    [[nodiscard]] int value() const noexcept { return radix_; }
    [[nodiscard]] double as_double() const noexcept { return static_cast<double>(radix_); }
    [[nodiscard]] double ln() const noexcept { return ln_; }

    friend bool operator==(const Base& a, const Base& b) noexcept { return a.radix_ == b.radix_; }

private:
    int radix_;
    double ln_;
};

inline const Base kDecimal{10};

/// x = mantissa * b^exponent with 1 <= mantissa < b.
struct Significand {
    double mantissa;
    int exponent;
};

/// Splits x > 0 into significand and exponent using exponent arithmetic.
/// Values within a few ulps below a power of b snap to mantissa 1.
[[nodiscard]] Significand significand(double x, Base base);

/// Leading significant digit, in [1, b-1].
[[nodiscard]] int first_digit(double x, Base base);

/// frac(log_b x), computed from the significand so exact powers of b map to 0.
[[nodiscard]] double log_mantissa(double x, Base base);

/// Benford probability of leading digit d: log_b(1 + 1/d).
[[nodiscard]] double benford_first_digit_pmf(int d, Base base);

/// Probability that the leading digit block equals `block`.
///
/// Uses the standard joint significant-digit law log_b(1 + 1/D), where D is
/// the block read as a base-b integer. The closed form comes from the
/// significant-digit literature rather than being derived here.
[[nodiscard]] double benford_block_pmf(std::span<const int> block, Base base);

} // namespace benford
