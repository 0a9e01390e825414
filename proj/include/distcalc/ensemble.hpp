#pragma once

// Seeded random factor ensembles for exercising the product bound.
//
// A factor is built as D1 (J + eps E) D2: J is the all-ones matrix, E has
// uniform [0, 1) entries, and eps is tuned by bisection until the
// distortion of the core lands in [sqrt(alpha), alpha] (never above
// alpha). Some noise patterns top out below sqrt(alpha) at every coupling
// (the limit is the distortion of E itself); those are redrawn. D1, D2
// are diagonal with entries that are random powers of two;
// scaling by exact powers of two changes neither the distortion nor any
// entry's mantissa, so the spread of entry magnitudes is decoupled from
// the distortion, and with alpha = 1 every factor is exactly rank one.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <vector>

#include "distcalc/core.hpp"
#include "distcalc/errors.hpp"
#include "distcalc/products.hpp"
#include "distcalc/rng.hpp"

namespace distcalc {

// Actuals above bound * (1 + kViolationSlack) count as violations.
inline constexpr double kViolationSlack = 1e-9;

struct EnsembleConfig {
    std::size_t dimension = 3;
    std::size_t length = 10;
    double alpha = 9.0;
    std::size_t trials = 100;
    std::uint64_t seed = 0;
};

inline void validate_config(const EnsembleConfig& c) {
    if (c.dimension < 2) throw config_error("ensemble: dimension must be >= 2");
    if (c.length < 1) throw config_error("ensemble: length must be >= 1");
    if (!(c.alpha >= 1.0)) throw config_error("ensemble: alpha must be >= 1");
    if (c.trials < 1) throw config_error("ensemble: trials must be >= 1");
}

// Random rows x cols factor with R in [sqrt(alpha), alpha]. Draw order is
// fixed (core entries, redrawn while the band is unreachable, then the two
// exponent vectors) so results are reproducible for a given generator
// state.
inline PositiveMatrix random_factor(std::size_t rows, std::size_t cols, double alpha,
                                    Xoshiro256pp& rng) {
    if (rows < 1 || cols < 1) throw dimension_mismatch("random_factor: need at least 1x1");
    if (!(alpha >= 1.0)) throw out_of_domain("random_factor: alpha must be >= 1");
    std::vector<double> noise(rows * cols);
    std::vector<double> core(rows * cols, 1.0);
    auto draw_noise = [&] {
        for (auto& w : noise) w = rng.uniform01();
    };
    auto core_distortion = [&](double eps) {
        for (std::size_t i = 0; i < core.size(); ++i) core[i] = 1.0 + eps * noise[i];
        return detail::distortion_row_major(rows, cols, core.data());
    };

    draw_noise();
    double eps = 0.0;
    if (alpha > 1.0 && rows > 1 && cols > 1) {
        const double floor = std::sqrt(alpha);
        for (int attempt = 0; attempt < 200; ++attempt) {
            double hi = 1.0;
            int doublings = 0;
            while (core_distortion(hi) < floor && doublings < 64) {
                hi *= 2.0;
                ++doublings;
            }
            if (core_distortion(hi) < floor) {
                // saturated below the floor; this noise pattern cannot
                // reach the band at any coupling
                eps = hi;
                draw_noise();
                continue;
            }
            if (core_distortion(hi) <= alpha) {
                eps = hi;
                break;
            }
            double lo = 0.0;
            for (int iter = 0; iter < 200; ++iter) {
                const double mid = 0.5 * (lo + hi);
                const double r = core_distortion(mid);
                if (r > alpha) {
                    hi = mid;
                } else {
                    lo = mid;
                    eps = mid;
                    if (r >= floor) break;
                }
            }
            break;
        }
    }
    core_distortion(eps);

    std::vector<double> row_scale(rows), col_scale(cols);
    for (auto& s : row_scale) s = std::ldexp(1.0, rng.uniform_int(-10, 10));
    for (auto& s : col_scale) s = std::ldexp(1.0, rng.uniform_int(-10, 10));
    std::vector<double> entries(rows * cols);
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < cols; ++j)
            entries[i * cols + j] = core[i * cols + j] * row_scale[i] * col_scale[j];
    return PositiveMatrix(rows, cols, std::move(entries));
}

struct EnsembleRow {
    std::size_t n;
    double min;
    double median;
    double max;
    double bound;  // closed-form envelope bound at this n
};

struct EnsembleResult {
    std::vector<EnsembleRow> rows;
    std::size_t violations;
};

// Runs `trials` independent products of `length` random dimension x
// dimension factors and aggregates R(P_n) across trials at every n. Each
// trial gets its own sub-seeded generator.
inline EnsembleResult run_ensemble(const EnsembleConfig& cfg) {
    validate_config(cfg);
    std::vector<std::vector<double>> actuals(cfg.length);
    for (auto& column : actuals) column.reserve(cfg.trials);
    for (std::size_t trial = 0; trial < cfg.trials; ++trial) {
        Xoshiro256pp rng(sub_seed(cfg.seed, trial));
        ProductAccumulator acc;
        for (std::size_t step = 0; step < cfg.length; ++step)
            acc = accumulate(std::move(acc), random_factor(cfg.dimension, cfg.dimension, cfg.alpha, rng));
        for (const auto& [n, r] : acc.history) actuals[n - 1].push_back(r);
    }
    EnsembleResult result;
    result.rows.reserve(cfg.length);
    result.violations = 0;
    for (std::size_t idx = 0; idx < cfg.length; ++idx) {
        auto& column = actuals[idx];
        std::sort(column.begin(), column.end());
        const std::size_t m = column.size();
        const double median = m % 2 ? column[m / 2] : 0.5 * (column[m / 2 - 1] + column[m / 2]);
        const double bound = closed_form(cfg.alpha, static_cast<long>(idx) + 1).r_bound;
        for (double actual : column)
            if (actual > bound * (1.0 + kViolationSlack)) ++result.violations;
        result.rows.push_back({idx + 1, column.front(), median, column.back(), bound});
    }
    return result;
}

}  // namespace distcalc
