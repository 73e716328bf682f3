#pragma once

#include "benford/digits.hpp"

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace benford::cli {

/// Why an input row was not used.
struct SkipCounts {
    std::size_t empty = 0;
    std::size_t non_numeric = 0;
    std::size_t non_positive = 0;
    std::size_t non_finite = 0;
    std::size_t out_of_range = 0;

    [[nodiscard]] std::size_t total() const noexcept {
        return empty + non_numeric + non_positive + non_finite + out_of_range;
    }
};

/// Strictly positive finite values read from a file or stdin.
struct Dataset {
    std::string source;
    std::vector<double> values;
    /// Trimmed source text of each value, parallel to `values`.
    std::vector<std::string> texts;
    std::size_t total_rows = 0;
    SkipCounts skipped;
};

/// Structural problem in the input (bad CSV); carries the 1-based line number.
class FormatError : public std::runtime_error {
public:
    FormatError(std::size_t line, const std::string& what)
        : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}
    [[nodiscard]] std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

/// Reads one value per line, or a CSV column when `column` is given.
///
/// A column given by name selects from a header row (not counted as data);
/// a column given as a non-negative integer is a 0-based index with no header.
/// Every data row ends up either in `values` or in `skipped`.
[[nodiscard]] Dataset read_dataset(std::istream& in, std::string source,
                                   const std::optional<std::string>& column = std::nullopt);

/// Leading nonzero digit of a decimal numeral such as "0.0072" or "1.99e3".
[[nodiscard]] int first_digit_from_text(const std::string& text);

/// Exit codes.
inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitEmpty = 3;

/// Entry point shared by the executable and the tests.
int run(int argc, const char* const* argv, std::istream& in, std::ostream& out, std::ostream& err);

} // namespace benford::cli
