#pragma once

// The multiplication envelope. If R(A) <= alpha and R(B) <= beta then
// R(AB) <= Phi(alpha, beta), where
//
//     Phi(alpha, beta) = ((1 + sqrt(alpha beta)) / (sqrt(alpha) + sqrt(beta)))^2,
//
// and the bound is attained by explicit 2x2 pairs. On the square-root
// scale p = sqrt(alpha), q = sqrt(beta) the envelope is the Moebius form
// Psi(p, q) = (1 + pq)/(p + q). The one-variable profile f below is the
// distortion of the normalized product as a function of the coupling
// t = uv; it is maximized at t* = 1/sqrt(alpha beta) with value Phi.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <string>

#include "distcalc/core.hpp"
#include "distcalc/errors.hpp"
#include "distcalc/rng.hpp"

namespace distcalc {

// Arguments this far below 1 are treated as rounding noise and clamped to
// 1; anything lower is a domain error.
inline constexpr double kDistortionSlack = 1e-12;

namespace detail {

inline double require_distortion(double value, const char* where) {
    if (value >= 1.0) return value;
    if (value >= 1.0 - kDistortionSlack) return 1.0;
    throw out_of_domain(std::string(where) + ": distortion argument must be >= 1, got " +
                        std::to_string(value));
}

inline void require_positive_scalar(double value, const char* where, const char* name) {
    if (!(value > 0.0) || !std::isfinite(value))
        throw out_of_domain(std::string(where) + ": " + name + " must be positive and finite");
}

}  // namespace detail

inline double phi(double alpha, double beta) {
    alpha = detail::require_distortion(alpha, "phi");
    beta = detail::require_distortion(beta, "phi");
    const double sa = std::sqrt(alpha);
    const double sb = std::sqrt(beta);
    const double ratio = (1.0 + sa * sb) / (sa + sb);
    return ratio * ratio;
}

// Square-root-scale envelope: Psi(p, q)^2 = Phi(p^2, q^2).
inline double psi(double p, double q) {
    p = detail::require_distortion(p, "psi");
    q = detail::require_distortion(q, "psi");
    return (1.0 + p * q) / (p + q);
}

// Distortion of the normalized extremal product as a function of the
// coupling t > 0.
inline double f_profile(double alpha, double beta, double t) {
    alpha = detail::require_distortion(alpha, "f_profile");
    beta = detail::require_distortion(beta, "f_profile");
    detail::require_positive_scalar(t, "f_profile", "t");
    return ((1.0 + t) * (1.0 + alpha * beta * t)) / ((1.0 + beta * t) * (1.0 + alpha * t));
}

// Unique maximizer of f_profile(alpha, beta, .) on (0, inf).
inline double t_star(double alpha, double beta) {
    alpha = detail::require_distortion(alpha, "t_star");
    beta = detail::require_distortion(beta, "t_star");
    return 1.0 / std::sqrt(alpha * beta);
}

// 2x2 pair with R(a) = alpha, R(b) = beta and R(ab) = Phi(alpha, beta).
struct WitnessPair {
    PositiveMatrix a;
    PositiveMatrix b;
    double achieved;  // R(ab), recomputed from the product
    double target;    // Phi(alpha, beta)
};

// The free parameter u > 0 trades scale between the factors; the coupling
// uv is pinned to t*, so any u attains the envelope.
inline WitnessPair witness_pair(double alpha, double beta, double u = 1.0) {
    alpha = detail::require_distortion(alpha, "witness_pair");
    beta = detail::require_distortion(beta, "witness_pair");
    detail::require_positive_scalar(u, "witness_pair", "u");
    const double v = t_star(alpha, beta) / u;
    PositiveMatrix a(2, 2, {1.0, u, 1.0, alpha * u});
    PositiveMatrix b(2, 2, {1.0, 1.0, v, beta * v});
    const double achieved = distortion(multiply(a, b));
    return {std::move(a), std::move(b), achieved, phi(alpha, beta)};
}

// Given a 2x2 left factor a, builds b with R(b) = beta such that
// R(ab) = Phi(R(a), beta). The coupling is chosen against the second
// column of a after rescaling rows to make the first column (1, 1); the
// two branches handle the two orientations of a.
inline PositiveMatrix complete_right(const PositiveMatrix& a, double beta) {
    if (a.rows() != 2 || a.cols() != 2)
        throw not_two_by_two("complete_right: left factor must be 2x2");
    beta = detail::require_distortion(beta, "complete_right");
    const double x = a(0, 1) / a(0, 0);
    const double y = a(1, 1) / a(1, 0);
    if (y >= x) {
        const double alpha = y / x;
        const double v = t_star(alpha, beta) / x;
        return PositiveMatrix(2, 2, {1.0, 1.0, v, beta * v});
    }
    const double alpha = x / y;
    const double v = t_star(alpha, beta) / y;
    return PositiveMatrix(2, 2, {1.0, 1.0, beta * v, v});
}

// Mirror of complete_right: builds a left factor for a given b, using
// R(m) = R(m^T) and (ab)^T = b^T a^T.
inline PositiveMatrix complete_left(const PositiveMatrix& b, double alpha) {
    if (b.rows() != 2 || b.cols() != 2)
        throw not_two_by_two("complete_left: right factor must be 2x2");
    return transpose(complete_right(transpose(b), alpha));
}

// Monte Carlo lower estimate of max R(ab) over R(a) <= alpha, R(b) <= beta.
// Samples distortions uniformly on [1, bound] and couplings log-uniformly
// on [0.1, 10] in the normalized extremal forms; naive entrywise sampling
// would almost never come near the envelope.
inline double empirical_max(double alpha, double beta, std::size_t trials, std::uint64_t seed) {
    alpha = detail::require_distortion(alpha, "empirical_max");
    beta = detail::require_distortion(beta, "empirical_max");
    if (trials < 1) throw out_of_domain("empirical_max: trials must be >= 1");
    double best = 1.0;
    for (std::size_t trial = 0; trial < trials; ++trial) {
        Xoshiro256pp rng(sub_seed(seed, trial));
        const double ra = rng.uniform(1.0, alpha);
        const double rb = rng.uniform(1.0, beta);
        const double u = rng.log_uniform(0.1, 10.0);
        const double v = rng.log_uniform(0.1, 10.0);
        const PositiveMatrix a(2, 2, {1.0, u, 1.0, ra * u});
        const PositiveMatrix b(2, 2, {1.0, 1.0, v, rb * v});
        best = std::max(best, distortion(multiply(a, b)));
    }
    return best;
}

}  // namespace distcalc
