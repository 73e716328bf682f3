#include "benford/digits.hpp"

#include "benford/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace benford {

namespace {

constexpr int kSnapUlps = 4;

// b^e by repeated squaring; exact whenever the result is representable.
double int_power(double b, int e) {
    const bool negative = e < 0;
    unsigned n = negative ? static_cast<unsigned>(-(static_cast<long>(e))) : static_cast<unsigned>(e);
    double result = 1.0;
    double factor = b;
    while (n != 0) {
        if (n & 1U) result *= factor;
        factor *= factor;
        n >>= 1U;
    }
    return negative ? 1.0 / result : result;
}

void check_positive(double x) {
    if (!(x > 0.0) || !std::isfinite(x)) {
        throw DomainError("significand requires a positive finite value, got " + std::to_string(x));
    }
}

} // namespace

Base::Base(int radix) : radix_(radix), ln_(std::log(static_cast<double>(radix))) {
    if (radix < 2) {
        throw DomainError("base must be at least 2, got " + std::to_string(radix));
    }
}

Significand significand(double x, Base base) {
    check_positive(x);
    const double b = base.as_double();

    if (base.value() == 2) {
        int e = 0;
        const double m = std::frexp(x, &e); // m in [0.5, 1)
        return {m * 2.0, e - 1};
    }

    int e = static_cast<int>(std::floor(std::log(x) / base.ln()));
    // Dividing by a negative power loses exactness (10^-2 is not representable),
    // so scale up by the positive power instead.
    double s = e >= 0 ? x / int_power(b, e) : x * int_power(b, -e);
    if (!std::isfinite(s) || s == 0.0) {
        // Subnormal or extreme range: fall back to a two-step scaling.
        const int half = e / 2;
        s = e >= 0 ? (x / int_power(b, half)) / int_power(b, e - half)
                   : (x * int_power(b, -half)) * int_power(b, half - e);
    }
    while (s >= b) {
        s /= b;
        ++e;
    }
    while (s < 1.0) {
        s *= b;
        --e;
    }
    // subnormal inputs carry fewer bits, so their ulp is wider than epsilon
    const double rel_ulp = (std::nextafter(x, std::numeric_limits<double>::infinity()) - x) / x;
    if (b - s <= kSnapUlps * b * std::max(std::numeric_limits<double>::epsilon(), rel_ulp)) {
        s = 1.0;
        ++e;
    }
    return {s, e};
}

int first_digit(double x, Base base) {
    const auto sig = significand(x, base);
    const int d = static_cast<int>(std::floor(sig.mantissa));
    return d < base.value() ? d : base.value() - 1;
}

double log_mantissa(double x, Base base) {
    const auto sig = significand(x, base);
    const double u = std::log(sig.mantissa) / base.ln();
    return u < 1.0 ? u : std::nextafter(1.0, 0.0);
}

double benford_first_digit_pmf(int d, Base base) {
    if (d < 1 || d > base.value() - 1) {
        throw DomainError("first digit " + std::to_string(d) + " outside [1, " +
                          std::to_string(base.value() - 1) + "]");
    }
    return std::log1p(1.0 / d) / base.ln();
}

double benford_block_pmf(std::span<const int> block, Base base) {
    if (block.empty()) {
        throw DomainError("digit block must be nonempty");
    }
    const int b = base.value();
    double value = 0.0;
    for (std::size_t i = 0; i < block.size(); ++i) {
        const int d = block[i];
        const int lo = i == 0 ? 1 : 0;
        if (d < lo || d > b - 1) {
            throw DomainError("digit " + std::to_string(d) + " at position " + std::to_string(i) +
                              " outside [" + std::to_string(lo) + ", " + std::to_string(b - 1) + "]");
        }
        value = value * b + d;
    }
    return std::log1p(1.0 / value) / base.ln();
}

} // namespace benford
