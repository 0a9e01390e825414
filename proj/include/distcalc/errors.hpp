#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace distcalc {

// Base class for every error thrown by the library.
class error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

// An entry that must be strictly positive and finite is zero, negative,
// NaN or infinite. Carries the (row, col) of the offender; for vectors
// row is 0 and col is the index.
class non_positive_entry : public error {
  public:
    non_positive_entry(std::size_t row_, std::size_t col_, double value_)
        : error("non-positive or non-finite entry at (" + std::to_string(row_) + "," +
                std::to_string(col_) + "): " + std::to_string(value_)),
          row(row_), col(col_), value(value_) {}

    std::size_t row;
    std::size_t col;
    double value;
};

class dimension_mismatch : public error {
  public:
    using error::error;
};

class not_two_by_two : public error {
  public:
    using error::error;
};

// An argument lies outside the domain of a formula (e.g. a distortion
// below 1 or a nonpositive coupling).
class out_of_domain : public error {
  public:
    using error::error;
};

class precondition_violated : public error {
  public:
    using error::error;
};

class insufficient_data : public error {
  public:
    using error::error;
};

class all_converged : public error {
  public:
    using error::error;
};

class config_error : public error {
  public:
    using error::error;
};

// Text input could not be parsed; line is 1-based, column is the 1-based
// token position on that line (0 when the error is not tied to a token).
class parse_error : public error {
  public:
    parse_error(std::size_t line_, std::size_t column_, const std::string& what_)
        : error("line " + std::to_string(line_) +
                (column_ ? ", token " + std::to_string(column_) : std::string()) + ": " + what_),
          line(line_), column(column_) {}

    std::size_t line;
    std::size_t column;
};

}  // namespace distcalc
