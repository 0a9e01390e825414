#pragma once

// Reduction of the four-vector cross ratio to dimension two.
//
// F_d(x, y; u, v) = (x.u)(y.v) / ((x.v)(y.u)) is fractional-linear in each
// coordinate of y and of v, so it is maximized over the boxes
// y_i in [a- x_i, a+ x_i], v_i in [b- u_i, b+ u_i] at per-coordinate
// endpoints (a-, a+ and b-, b+ are the slope ranges of (x, y) and (u, v)).
// push_extremal performs one ascending sweep per side and never decreases
// the value. Once every ratio sits at an endpoint, collapse_2d aggregates
// the coordinates in each slope class and produces a two-dimensional
// configuration with the same slope ranges and no smaller cross ratio.

#include <cmath>
#include <cstddef>
#include <utility>
#include <vector>

#include "distcalc/core.hpp"
#include "distcalc/errors.hpp"

namespace distcalc {

// A ratio within this relative distance of a slope endpoint counts as
// already extremal and is left untouched by the sweep.
inline constexpr double kEndpointSlack = 1e-12;

// collapse_2d accepts ratios within this relative distance of an endpoint.
inline constexpr double kCollapseSlack = 1e-9;

// Slope ranges narrower than this are treated as a single point.
inline constexpr double kDegenerateSlack = 1e-13;

namespace detail {

// One ascending sweep moving each free coordinate of z to an endpoint of
// [lo*base_i, hi*base_i]. The value being maximized is proportional to
// (z.num_w)/(z.den_w); both dot products are maintained incrementally and
// recomposed exactly after each choice. Ties keep the lower endpoint.
inline std::vector<double> push_sweep(const std::vector<double>& base, std::vector<double> z,
                                      const std::vector<double>& num_w,
                                      const std::vector<double>& den_w, double lo, double hi) {
    double num = dot(z, num_w);
    double den = dot(z, den_w);
    for (std::size_t i = 0; i < z.size(); ++i) {
        const double r = z[i] / base[i];
        const bool at_lo = std::abs(r - lo) <= kEndpointSlack * lo;
        const bool at_hi = std::abs(r - hi) <= kEndpointSlack * hi;
        if (at_lo || at_hi) continue;
        const double zlo = lo * base[i];
        const double zhi = hi * base[i];
        const double num_rest = num - z[i] * num_w[i];
        const double den_rest = den - z[i] * den_w[i];
        const double value_lo = (num_rest + zlo * num_w[i]) / (den_rest + zlo * den_w[i]);
        const double value_hi = (num_rest + zhi * num_w[i]) / (den_rest + zhi * den_w[i]);
        z[i] = value_hi > value_lo ? zhi : zlo;
        num = num_rest + z[i] * num_w[i];
        den = den_rest + z[i] * den_w[i];
    }
    return z;
}

}  // namespace detail

struct PushResult {
    PositiveVector y_star;
    PositiveVector v_star;
    double value_before;  // F_d(x, y; u, v)
    double value_after;   // F_d(x, y_star; u, v_star), never smaller
};

// Pushes every ratio of (x, y) and then of (u, v) to a slope endpoint
// without decreasing the cross ratio or widening either slope range.
inline PushResult push_extremal(const PositiveVector& x, const PositiveVector& y,
                                const PositiveVector& u, const PositiveVector& v) {
    if (x.size() != y.size() || x.size() != u.size() || x.size() != v.size())
        throw dimension_mismatch("push_extremal: all four vectors must have equal length");
    const double before = cross_ratio(x, y, u, v);
    const SlopeRange a = slopes(x, y);
    const SlopeRange b = slopes(u, v);
    // F_d depends on y through (y.v)/(y.u) and, given the new y, on v
    // through (y.v)/(x.v).
    PositiveVector y_star(
        detail::push_sweep(x.entries(), y.entries(), v.entries(), u.entries(), a.lo, a.hi));
    PositiveVector v_star(
        detail::push_sweep(u.entries(), v.entries(), y_star.entries(), x.entries(), b.lo, b.hi));
    const double after = cross_ratio(x, y_star, u, v_star);
    return {std::move(y_star), std::move(v_star), before, after};
}

struct CollapseResult {
    PositiveVector x2;
    PositiveVector y2;
    PositiveVector u2;
    PositiveVector v2;
    double value_before;  // cross ratio of the input configuration
    double value_after;   // F_2 of the collapsed one, never smaller
};

// Collapses an endpoint configuration to dimension two. Coordinates are
// grouped by the slope class of y_i/x_i; each group is aggregated to a
// single coordinate carrying its total x-mass and the x-weighted mean of
// u. Requires every ratio of both pairs to sit at a slope endpoint
// (within kCollapseSlack); use push_extremal first otherwise.
inline CollapseResult collapse_2d(const PositiveVector& x, const PositiveVector& y,
                                  const PositiveVector& u, const PositiveVector& v) {
    if (x.size() != y.size() || x.size() != u.size() || x.size() != v.size())
        throw dimension_mismatch("collapse_2d: all four vectors must have equal length");
    const double before = cross_ratio(x, y, u, v);
    const SlopeRange a = slopes(x, y);
    const SlopeRange b = slopes(u, v);
    const bool a_point = (a.hi - a.lo) <= kDegenerateSlack * a.lo;
    const bool b_point = (b.hi - b.lo) <= kDegenerateSlack * b.lo;
    if (a_point || b_point) {
        // One side is proportional, so F_d = 1 up to rounding; the explicit
        // two-vector form keeps both slope ranges.
        PositiveVector x2({1.0, 1.0});
        PositiveVector u2({1.0, 1.0});
        PositiveVector y2(a_point ? std::vector<double>{a.lo, a.lo}
                                  : std::vector<double>{a.lo, a.hi});
        PositiveVector v2(b_point ? std::vector<double>{b.lo, b.lo}
                                  : std::vector<double>{b.lo, b.hi});
        const double after = cross_ratio(x2, y2, u2, v2);
        return {std::move(x2), std::move(y2), std::move(u2), std::move(v2), before, after};
    }
    double x_minus = 0.0, x_plus = 0.0;
    double xu_minus = 0.0, xu_plus = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double r = y[i] / x[i];
        const bool near_lo = std::abs(r - a.lo) <= kCollapseSlack * a.lo;
        const bool near_hi = std::abs(r - a.hi) <= kCollapseSlack * a.hi;
        if (!near_lo && !near_hi)
            throw precondition_violated("collapse_2d: ratio y[" + std::to_string(i) +
                                        "]/x[" + std::to_string(i) + "] is not at a slope endpoint");
        const double rv = v[i] / u[i];
        if (std::abs(rv - b.lo) > kCollapseSlack * b.lo && std::abs(rv - b.hi) > kCollapseSlack * b.hi)
            throw precondition_violated("collapse_2d: ratio v[" + std::to_string(i) +
                                        "]/u[" + std::to_string(i) + "] is not at a slope endpoint");
        const bool plus = near_lo && near_hi ? (std::abs(r - a.hi) < std::abs(r - a.lo)) : near_hi;
        if (plus) {
            x_plus += x[i];
            xu_plus += x[i] * u[i];
        } else {
            x_minus += x[i];
            xu_minus += x[i] * u[i];
        }
    }
    // Both classes are nonempty: the ratios attaining a.lo and a.hi land
    // in the minus and plus class respectively.
    const double u_minus = xu_minus / x_minus;
    const double u_plus = xu_plus / x_plus;
    PositiveVector x2({x_minus, x_plus});
    PositiveVector y2({a.lo * x_minus, a.hi * x_plus});
    PositiveVector u2({u_minus, u_plus});
    PositiveVector v2({b.lo * u_minus, b.hi * u_plus});
    const double after = cross_ratio(x2, y2, u2, v2);
    return {std::move(x2), std::move(y2), std::move(u2), std::move(v2), before, after};
}

// Full pipeline: push to endpoints, then collapse. value_before refers to
// the original configuration, value_after to the final 2-D one.
inline CollapseResult four_point_collapse(const PositiveVector& x, const PositiveVector& y,
                                          const PositiveVector& u, const PositiveVector& v) {
    PushResult pushed = push_extremal(x, y, u, v);
    CollapseResult out = collapse_2d(x, pushed.y_star, u, pushed.v_star);
    out.value_before = pushed.value_before;
    return out;
}

}  // namespace distcalc
