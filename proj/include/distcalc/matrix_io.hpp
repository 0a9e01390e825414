#pragma once

// Plain-text matrix files. One row per line, entries separated by
// whitespace, matrices separated by one or more blank lines, '#' starts a
// comment that runs to the end of the line. Numbers are parsed and
// written with std::from_chars / std::to_chars, so I/O is locale
// independent and a 17-digit write/read round trip is bit exact.

#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <string>
#include <system_error>
#include <vector>

#include "distcalc/core.hpp"
#include "distcalc/errors.hpp"

namespace distcalc {

// value -> shortest string with `digits` significant decimal digits.
inline std::string format_double(double value, int digits = 17) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof(buf), value, std::chars_format::general, digits);
    return std::string(buf, res.ptr);
}

namespace detail {

inline bool is_space(char c) { return c == ' ' || c == '\t' || c == '\r' || c == '\v' || c == '\f'; }

inline double parse_token(const std::string& token, std::size_t line, std::size_t column) {
    const char* first = token.data();
    const char* last = token.data() + token.size();
    if (first != last && *first == '+') ++first;  // from_chars rejects a leading '+'
    double value = 0.0;
    const auto res = std::from_chars(first, last, value);
    if (res.ec != std::errc() || res.ptr != last)
        throw parse_error(line, column, "cannot parse number '" + token + "'");
    return value;
}

}  // namespace detail

// Reads every matrix in the stream, in order. Ragged rows and malformed
// numbers raise parse_error; nonpositive entries raise non_positive_entry
// with indices relative to the matrix being read.
inline std::vector<PositiveMatrix> read_matrices(std::istream& in) {
    std::vector<PositiveMatrix> out;
    std::vector<std::vector<double>> rows;
    std::size_t first_line = 0;  // line of the current matrix's first row

    auto flush = [&] {
        if (rows.empty()) return;
        std::vector<double> flat;
        flat.reserve(rows.size() * rows.front().size());
        for (const auto& r : rows) flat.insert(flat.end(), r.begin(), r.end());
        out.emplace_back(rows.size(), rows.front().size(), std::move(flat));
        rows.clear();
    };

    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const std::size_t hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);

        std::vector<double> row;
        std::size_t pos = 0;
        while (pos < line.size()) {
            while (pos < line.size() && detail::is_space(line[pos])) ++pos;
            if (pos >= line.size()) break;
            std::size_t end = pos;
            while (end < line.size() && !detail::is_space(line[end])) ++end;
            row.push_back(detail::parse_token(line.substr(pos, end - pos), lineno, row.size() + 1));
            pos = end;
        }
        if (row.empty()) {
            flush();
            continue;
        }
        if (rows.empty()) first_line = lineno;
        if (!rows.empty() && row.size() != rows.front().size())
            throw parse_error(lineno, 0,
                              "row has " + std::to_string(row.size()) + " entries, expected " +
                                  std::to_string(rows.front().size()) + " (matrix starting at line " +
                                  std::to_string(first_line) + ")");
        rows.push_back(std::move(row));
    }
    flush();
    return out;
}

inline std::vector<PositiveMatrix> read_matrices(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw parse_error(0, 0, "cannot open '" + path + "'");
    return read_matrices(in);
}

inline void write_matrix(std::ostream& os, const PositiveMatrix& m, int digits = 17) {
    for (std::size_t i = 0; i < m.rows(); ++i) {
        for (std::size_t j = 0; j < m.cols(); ++j) {
            if (j) os << ' ';
            os << format_double(m(i, j), digits);
        }
        os << '\n';
    }
}

inline void write_matrices(std::ostream& os, const std::vector<PositiveMatrix>& ms, int digits = 17) {
    for (std::size_t k = 0; k < ms.size(); ++k) {
        if (k) os << '\n';
        write_matrix(os, ms[k], digits);
    }
}

}  // namespace distcalc
