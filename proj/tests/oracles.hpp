#pragma once

// Test-side oracles, kept independent of the library's computation paths:
// distortion by scanning every index quadruple directly, envelope values
// by grid maximization of the coupling profile, and cross-ratio maxima by
// exhaustive endpoint assignment.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <vector>

#include "distcalc/core.hpp"
#include "distcalc/rng.hpp"

namespace oracle {

// R(A) as the literal maximum over all row pairs and column pairs of the
// oriented 2x2 ratio and its reciprocal.
inline double distortion_quadruple_scan(const distcalc::PositiveMatrix& a) {
    double best = 1.0;
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = i + 1; j < a.rows(); ++j)
            for (std::size_t k = 0; k < a.cols(); ++k)
                for (std::size_t l = k + 1; l < a.cols(); ++l) {
                    const double f = (a(i, k) * a(j, l)) / (a(i, l) * a(j, k));
                    best = std::max({best, f, 1.0 / f});
                }
    return best;
}

struct GridMax {
    double t;
    double value;
};

// Maximum of (1+t)(1+ab t) / ((1+b t)(1+a t)) over the uniform grid
// t = t_max k/points, k = 1..points.
inline GridMax profile_grid_max(double alpha, double beta, double t_max, std::size_t points) {
    GridMax best{0.0, 0.0};
    for (std::size_t k = 1; k <= points; ++k) {
        const double t = t_max * static_cast<double>(k) / static_cast<double>(points);
        const double value =
            ((1.0 + t) * (1.0 + alpha * beta * t)) / ((1.0 + beta * t) * (1.0 + alpha * t));
        if (value > best.value) best = {t, value};
    }
    return best;
}

// Maximum cross ratio over every endpoint assignment y_i in {lo_a x_i,
// hi_a x_i} and v_i in {lo_b u_i, hi_b u_i}. Exponential in the length;
// meant for d <= 5 or so.
inline double assignment_max(const std::vector<double>& x, const std::vector<double>& u,
                             double lo_a, double hi_a, double lo_b, double hi_b) {
    const std::size_t d = x.size();
    double xu = 0.0;
    for (std::size_t i = 0; i < d; ++i) xu += x[i] * u[i];
    std::vector<double> y(d), v(d);
    double best = 0.0;
    for (std::size_t ymask = 0; ymask < (std::size_t{1} << d); ++ymask) {
        for (std::size_t i = 0; i < d; ++i) y[i] = ((ymask >> i) & 1 ? hi_a : lo_a) * x[i];
        double yu = 0.0;
        for (std::size_t i = 0; i < d; ++i) yu += y[i] * u[i];
        for (std::size_t vmask = 0; vmask < (std::size_t{1} << d); ++vmask) {
            for (std::size_t i = 0; i < d; ++i) v[i] = ((vmask >> i) & 1 ? hi_b : lo_b) * u[i];
            double yv = 0.0, xv = 0.0;
            for (std::size_t i = 0; i < d; ++i) {
                yv += y[i] * v[i];
                xv += x[i] * v[i];
            }
            best = std::max(best, (xu * yv) / (xv * yu));
        }
    }
    return best;
}

inline distcalc::PositiveVector random_vector(std::size_t d, double lo, double hi,
                                              distcalc::Xoshiro256pp& rng) {
    std::vector<double> out(d);
    for (auto& w : out) w = rng.log_uniform(lo, hi);
    return distcalc::PositiveVector(std::move(out));
}

inline distcalc::PositiveMatrix random_matrix(std::size_t rows, std::size_t cols, double lo,
                                              double hi, distcalc::Xoshiro256pp& rng) {
    std::vector<double> out(rows * cols);
    for (auto& w : out) w = rng.log_uniform(lo, hi);
    return distcalc::PositiveMatrix(rows, cols, std::move(out));
}

// |a - b| relative to the larger magnitude, floored at 1 so values near
// zero compare absolutely.
inline double rel_diff(double a, double b) {
    return std::abs(a - b) / std::max({1.0, std::abs(a), std::abs(b)});
}

}  // namespace oracle
