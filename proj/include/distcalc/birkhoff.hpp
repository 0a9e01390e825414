#pragma once

// Hilbert-metric view of the envelope. d_H(x, y) = log Dist(x, y) is the
// Hilbert projective distance on the positive cone, and on that scale the
// envelope becomes
//
//     Theta(h) = 2 log((1 + p e^{h/2}) / (p + e^{h/2})),   p = sqrt(R(A)),
//
// the sharp bound on d_H(Ax, Ay) given d_H(x, y) = h. Theta starts with
// slope kappa(A) = (p - 1)/(p + 1), the classical Birkhoff-Bushell
// contraction coefficient, stays concave, and saturates at log R(A).
// The linear bound kappa * h is tangent at 0 but ignores saturation; the
// comparison table puts the two side by side.

#include <cmath>
#include <cstddef>
#include <vector>

#include "distcalc/core.hpp"
#include "distcalc/envelope.hpp"
#include "distcalc/errors.hpp"

namespace distcalc {

inline double hilbert_distance(const PositiveVector& x, const PositiveVector& y) {
    return std::log(dist(x, y));
}

// Theta(h, p). Past h/2 > 350 the exponential would overflow while Theta
// is within 1e-150 of its limit, so the saturation value 2 log p is
// returned directly.
inline double theta(double h, double p) {
    p = detail::require_distortion(p, "theta");
    if (!(h >= 0.0)) throw out_of_domain("theta: h must be >= 0");
    if (h > 700.0) return 2.0 * std::log(p);
    const double e = std::exp(0.5 * h);
    return 2.0 * (std::log(1.0 + p * e) - std::log(p + e));
}

// kappa(A) = (sqrt(R(A)) - 1)/(sqrt(R(A)) + 1) = Theta'(0).
inline double bb_kappa(const PositiveMatrix& a) {
    const double p = std::sqrt(distortion(a));
    return (p - 1.0) / (p + 1.0);
}

struct CurvePoint {
    double h;
    double theta;       // sharp bound
    double bb_line;     // kappa * h, the linear bound
    double saturation;  // 2 log p, the horizontal asymptote
};

struct CurveTable {
    double p;
    double kappa;
    std::vector<CurvePoint> points;
};

// Uniform grid of `samples` points on [0, h_max] (endpoints included).
inline CurveTable comparison_curve(double p, double h_max, std::size_t samples) {
    p = detail::require_distortion(p, "comparison_curve");
    if (!(h_max > 0.0) || !std::isfinite(h_max))
        throw out_of_domain("comparison_curve: h_max must be positive and finite");
    if (samples < 2) throw out_of_domain("comparison_curve: need at least 2 samples");
    CurveTable table;
    table.p = p;
    table.kappa = (p - 1.0) / (p + 1.0);
    table.points.reserve(samples);
    const double saturation = 2.0 * std::log(p);
    for (std::size_t k = 0; k < samples; ++k) {
        const double h = h_max * static_cast<double>(k) / static_cast<double>(samples - 1);
        table.points.push_back({h, theta(h, p), table.kappa * h, saturation});
    }
    return table;
}

struct ContractionCheck {
    double lhs;          // d_H(Ax, Ay)
    double theta_bound;  // Theta(d_H(x, y), sqrt(R(A)))
    double bb_bound;     // kappa(A) * d_H(x, y)
};

// Evaluates both bounds on a concrete instance; lhs <= theta_bound <=
// bb_bound always holds (up to rounding).
inline ContractionCheck contraction_check(const PositiveMatrix& a, const PositiveVector& x,
                                          const PositiveVector& y) {
    if (a.cols() != x.size() || x.size() != y.size())
        throw dimension_mismatch("contraction_check: matrix columns and vector lengths must match");
    const double h = hilbert_distance(x, y);
    const double p = std::sqrt(distortion(a));
    const double lhs = hilbert_distance(apply(a, x), apply(a, y));
    return {lhs, theta(h, p), (p - 1.0) / (p + 1.0) * h};
}

}  // namespace distcalc
