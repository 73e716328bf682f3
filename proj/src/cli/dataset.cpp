#include "benford/cli.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <istream>

namespace benford::cli {

namespace {

std::string trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r");
    return std::string(s.substr(first, last - first + 1));
}

std::vector<std::string> split_csv(const std::string& line, std::size_t line_no) {
    std::vector<std::string> fields;
    std::string field;
    bool quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        const char c = line[i];
        if (quoted) {
            if (c == '"') {
                if (i + 1 < line.size() && line[i + 1] == '"') {
                    field.push_back('"');
                    ++i;
                } else {
                    quoted = false;
                }
            } else {
                field.push_back(c);
            }
        } else if (c == '"') {
            quoted = true;
        } else if (c == ',') {
            fields.push_back(trim(field));
            field.clear();
        } else {
            field.push_back(c);
        }
    }
    if (quoted) throw FormatError(line_no, "unterminated quoted field");
    fields.push_back(trim(field));
    return fields;
}

bool is_index(const std::string& s) {
    return !s.empty() && std::all_of(s.begin(), s.end(), [](char c) { return c >= '0' && c <= '9'; });
}

void classify(Dataset& ds, const std::string& text) {
    if (text.empty()) {
        ++ds.skipped.empty;
        return;
    }
    std::string_view sv = text;
    if (sv.front() == '+') sv.remove_prefix(1);
    double value = 0.0;
    const auto res = std::from_chars(sv.data(), sv.data() + sv.size(), value);
    if (res.ptr != sv.data() + sv.size() || (res.ec != std::errc{} && res.ec != std::errc::result_out_of_range)) {
        ++ds.skipped.non_numeric;
    } else if (res.ec == std::errc::result_out_of_range) {
        ++ds.skipped.out_of_range;
    } else if (!std::isfinite(value)) {
        ++ds.skipped.non_finite;
    } else if (!(value > 0.0)) {
        ++ds.skipped.non_positive;
    } else {
        ds.values.push_back(value);
        ds.texts.push_back(text);
    }
}

} // namespace

Dataset read_dataset(std::istream& in, std::string source, const std::optional<std::string>& column) {
    Dataset ds;
    ds.source = std::move(source);
    std::optional<std::size_t> index;
    bool need_header = false;
    if (column) {
        if (is_index(*column)) {
            index = std::stoul(*column);
        } else {
            need_header = true;
        }
    }

    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (need_header) {
            const auto header = split_csv(line, line_no);
            const auto it = std::find(header.begin(), header.end(), *column);
            if (it == header.end()) throw FormatError(line_no, "header has no column named '" + *column + "'");
            index = static_cast<std::size_t>(it - header.begin());
            need_header = false;
            continue;
        }
        ++ds.total_rows;
        if (!index) {
            classify(ds, trim(line));
            continue;
        }
        if (trim(line).empty()) {
            ++ds.skipped.empty;
            continue;
        }
        const auto fields = split_csv(line, line_no);
        if (*index >= fields.size()) {
            throw FormatError(line_no, "row has " + std::to_string(fields.size()) + " fields, column " +
                                           std::to_string(*index) + " requested");
        }
        classify(ds, fields[*index]);
    }
    if (need_header) throw FormatError(1, "missing header row for column '" + *column + "'");
    return ds;
}

int first_digit_from_text(const std::string& text) {
    for (char c : text) {
        if (c == 'e' || c == 'E') break;
        if (c >= '1' && c <= '9') return c - '0';
    }
    return 0;
}

} // namespace benford::cli
