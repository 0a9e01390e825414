#pragma once

// Distortion of strictly positive matrices.
//
// For positive vectors x, y the coordinatewise ratios y_i/x_i span the
// slope range [s-, s+], and Dist(x, y) = s+/s- measures how far y is from
// being a multiple of x. The distortion R(A) of a positive matrix is the
// largest Dist between two of its columns, which equals the largest value
// of the oriented 2x2 ratio a_ik a_jl / (a_il a_jk) over all row pairs
// (i, j) and column pairs (k, l).

#include <cmath>
#include <cstddef>
#include <utility>
#include <vector>

#include "distcalc/errors.hpp"

namespace distcalc {

namespace detail {

inline void check_positive(double value, std::size_t row, std::size_t col) {
    if (!(value > 0.0) || !std::isfinite(value)) throw non_positive_entry(row, col, value);
}

inline double dot(const std::vector<double>& a, const std::vector<double>& b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

// Max over column pairs of (max_i ratio) / (min_i ratio) on row-major data.
inline double distortion_row_major(std::size_t rows, std::size_t cols, const double* a) {
    if (rows < 2 || cols < 2) return 1.0;
    double best = 1.0;
    for (std::size_t k = 0; k + 1 < cols; ++k) {
        for (std::size_t l = k + 1; l < cols; ++l) {
            double lo = a[l] / a[k];
            double hi = lo;
            for (std::size_t i = 1; i < rows; ++i) {
                const double r = a[i * cols + l] / a[i * cols + k];
                if (r < lo) lo = r;
                if (r > hi) hi = r;
            }
            const double d = hi / lo;
            if (d > best) best = d;
        }
    }
    return best;
}

}  // namespace detail

// Vector with strictly positive finite entries; validated on construction.
class PositiveVector {
  public:
    explicit PositiveVector(std::vector<double> entries) : entries_(std::move(entries)) {
        if (entries_.empty()) throw dimension_mismatch("PositiveVector: must have at least one entry");
        for (std::size_t i = 0; i < entries_.size(); ++i) detail::check_positive(entries_[i], 0, i);
    }

    std::size_t size() const { return entries_.size(); }
    double operator[](std::size_t i) const { return entries_[i]; }
    const std::vector<double>& entries() const { return entries_; }

    auto begin() const { return entries_.begin(); }
    auto end() const { return entries_.end(); }

  private:
    std::vector<double> entries_;
};

// Dense rectangular matrix with strictly positive finite entries, stored
// row-major; validated on construction.
class PositiveMatrix {
  public:
    PositiveMatrix(std::size_t rows, std::size_t cols, std::vector<double> entries)
        : rows_(rows), cols_(cols), entries_(std::move(entries)) {
        if (rows_ == 0 || cols_ == 0)
            throw dimension_mismatch("PositiveMatrix: rows and cols must be at least 1");
        if (entries_.size() != rows_ * cols_)
            throw dimension_mismatch("PositiveMatrix: entry count does not match rows*cols");
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) detail::check_positive(entries_[i * cols_ + j], i, j);
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    double operator()(std::size_t i, std::size_t j) const { return entries_[i * cols_ + j]; }
    const std::vector<double>& entries() const { return entries_; }

    PositiveVector row(std::size_t i) const {
        std::vector<double> out(entries_.begin() + static_cast<std::ptrdiff_t>(i * cols_),
                                entries_.begin() + static_cast<std::ptrdiff_t>((i + 1) * cols_));
        return PositiveVector(std::move(out));
    }

    PositiveVector column(std::size_t j) const {
        std::vector<double> out;
        out.reserve(rows_);
        for (std::size_t i = 0; i < rows_; ++i) out.push_back((*this)(i, j));
        return PositiveVector(std::move(out));
    }

  private:
    std::size_t rows_;
    std::size_t cols_;
    std::vector<double> entries_;
};

// Builds a PositiveMatrix from a nested row list, rejecting ragged rows.
inline PositiveMatrix validate(const std::vector<std::vector<double>>& raw) {
    if (raw.empty()) throw dimension_mismatch("validate: no rows");
    const std::size_t cols = raw.front().size();
    std::vector<double> flat;
    flat.reserve(raw.size() * cols);
    for (std::size_t i = 0; i < raw.size(); ++i) {
        if (raw[i].size() != cols)
            throw dimension_mismatch("validate: row " + std::to_string(i) + " has " +
                                     std::to_string(raw[i].size()) + " entries, expected " +
                                     std::to_string(cols));
        flat.insert(flat.end(), raw[i].begin(), raw[i].end());
    }
    return PositiveMatrix(raw.size(), cols, std::move(flat));
}

// Extremal slopes of y against x: lo = min_i y_i/x_i, hi = max_i y_i/x_i.
struct SlopeRange {
    double lo;
    double hi;
};

inline SlopeRange slopes(const PositiveVector& x, const PositiveVector& y) {
    if (x.size() != y.size()) throw dimension_mismatch("slopes: vectors must have equal length");
    double lo = y[0] / x[0];
    double hi = lo;
    for (std::size_t i = 1; i < x.size(); ++i) {
        const double r = y[i] / x[i];
        if (r < lo) lo = r;
        if (r > hi) hi = r;
    }
    return {lo, hi};
}

// Dist(x, y) = s+/s-, always >= 1, equal to 1 iff y is a multiple of x.
inline double dist(const PositiveVector& x, const PositiveVector& y) {
    const SlopeRange s = slopes(x, y);
    return s.hi / s.lo;
}

// Oriented 2x2 ratio F(A) = a11 a22 / (a12 a21). Unlike R this can lie
// below 1; R(A) = max(F, 1/F) for 2x2 matrices.
inline double oriented_distortion(const PositiveMatrix& a) {
    if (a.rows() != 2 || a.cols() != 2)
        throw not_two_by_two("oriented_distortion: matrix must be 2x2");
    return (a(0, 0) * a(1, 1)) / (a(0, 1) * a(1, 0));
}

// R(A): the largest distortion of any 2x2 submatrix. Computed as the max
// of Dist over column pairs, so the cost is O(cols^2 * rows) rather than
// a scan of all quadruples. Matrices with a single row or column have no
// 2x2 submatrix and get R = 1.
inline double distortion(const PositiveMatrix& a) {
    return detail::distortion_row_major(a.rows(), a.cols(), a.entries().data());
}

// Index quadruple attaining R(A), oriented so that
// a(i,k) a(j,l) / (a(i,l) a(j,k)) = value >= 1.
struct ExtremalBlock {
    std::size_t i;
    std::size_t j;
    std::size_t k;
    std::size_t l;
    double value;
};

inline ExtremalBlock extremal_block(const PositiveMatrix& a) {
    if (a.rows() < 2 || a.cols() < 2)
        throw dimension_mismatch("extremal_block: need at least two rows and two columns");
    ExtremalBlock best{0, 1, 0, 1, 0.0};
    for (std::size_t k = 0; k + 1 < a.cols(); ++k) {
        for (std::size_t l = k + 1; l < a.cols(); ++l) {
            std::size_t imin = 0;
            std::size_t imax = 0;
            double lo = a(0, l) / a(0, k);
            double hi = lo;
            for (std::size_t i = 1; i < a.rows(); ++i) {
                const double r = a(i, l) / a(i, k);
                if (r < lo) { lo = r; imin = i; }
                if (r > hi) { hi = r; imax = i; }
            }
            const double d = hi / lo;
            // rows (imin, imax) give a(imin,k) a(imax,l) / (a(imin,l) a(imax,k)) = hi/lo >= 1
            if (d > best.value) best = {imin, imax, k, l, d};
        }
    }
    return best;
}

// Four-vector cross ratio (x.u)(y.v) / ((x.v)(y.u)). Equals the oriented
// distortion of the 2x2 matrix [[x.u, x.v], [y.u, y.v]].
inline double cross_ratio(const PositiveVector& x, const PositiveVector& y,
                          const PositiveVector& u, const PositiveVector& v) {
    if (x.size() != y.size() || x.size() != u.size() || x.size() != v.size())
        throw dimension_mismatch("cross_ratio: all four vectors must have equal length");
    const double xu = detail::dot(x.entries(), u.entries());
    const double yv = detail::dot(y.entries(), v.entries());
    const double xv = detail::dot(x.entries(), v.entries());
    const double yu = detail::dot(y.entries(), u.entries());
    return (xu * yv) / (xv * yu);
}

inline PositiveMatrix multiply(const PositiveMatrix& a, const PositiveMatrix& b) {
    if (a.cols() != b.rows())
        throw dimension_mismatch("multiply: inner dimensions " + std::to_string(a.cols()) +
                                 " and " + std::to_string(b.rows()) + " do not match");
    std::vector<double> out(a.rows() * b.cols(), 0.0);
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t k = 0; k < a.cols(); ++k) {
            const double aik = a(i, k);
            for (std::size_t j = 0; j < b.cols(); ++j) out[i * b.cols() + j] += aik * b(k, j);
        }
    return PositiveMatrix(a.rows(), b.cols(), std::move(out));
}

inline PositiveVector apply(const PositiveMatrix& a, const PositiveVector& x) {
    if (a.cols() != x.size())
        throw dimension_mismatch("apply: matrix has " + std::to_string(a.cols()) +
                                 " columns but vector has " + std::to_string(x.size()) + " entries");
    std::vector<double> out(a.rows(), 0.0);
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) out[i] += a(i, j) * x[j];
    return PositiveVector(std::move(out));
}

inline PositiveMatrix transpose(const PositiveMatrix& a) {
    std::vector<double> out(a.rows() * a.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) out[j * a.rows() + i] = a(i, j);
    return PositiveMatrix(a.cols(), a.rows(), std::move(out));
}

}  // namespace distcalc
