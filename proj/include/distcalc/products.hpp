#pragma once

// Distortion bounds along products P_n = A_n ... A_1.
//
// On the square-root scale p_k = sqrt(R(A_k)) the envelope composes as a
// Moebius recursion q_1 = p_1, q_{n+1} = Psi(p_{n+1}, q_n), giving
// R(P_n) <= q_n^2. For a uniform factor bound R(A_k) <= alpha the
// recursion has the closed form
//
//     q_n = 1 + 2 kappa^n / (1 - kappa^n),
//     R(P_n) <= 1 + 4 kappa^n / (1 - kappa^n)^2,
//
// with kappa = (sqrt(alpha) - 1)/(sqrt(alpha) + 1), so products contract
// toward rank one at the geometric rate kappa regardless of the factors.

#include <cmath>
#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "distcalc/core.hpp"
#include "distcalc/envelope.hpp"
#include "distcalc/errors.hpp"

namespace distcalc {

// History entries with sqrt(R) - 1 at or below this carry no decay
// information; they sit at the fixed point up to rounding.
inline constexpr double kConvergedSlack = 1e-13;

struct BoundTrajectory {
    std::vector<double> p;        // per-factor bounds, sqrt scale
    std::vector<double> q;        // cumulative bounds, sqrt scale
    std::vector<double> r_bound;  // q^2, the distortion bounds on P_n
};

inline BoundTrajectory propagate(const std::vector<double>& p_bounds) {
    if (p_bounds.empty()) throw out_of_domain("propagate: need at least one factor bound");
    BoundTrajectory t;
    t.p.reserve(p_bounds.size());
    t.q.reserve(p_bounds.size());
    t.r_bound.reserve(p_bounds.size());
    double q = 1.0;
    for (double raw : p_bounds) {
        const double p = detail::require_distortion(raw, "propagate");
        q = t.q.empty() ? p : psi(p, q);
        t.p.push_back(p);
        t.q.push_back(q);
        t.r_bound.push_back(q * q);
    }
    return t;
}

struct ClosedFormBound {
    double q;        // q_n
    double r_bound;  // bound on R(P_n)
    double kappa;    // (sqrt(alpha) - 1)/(sqrt(alpha) + 1)
};

namespace detail {

// kappa^n: plain repeated multiplication for small n; exp(n log kappa)
// once the loop itself would accumulate more rounding than the identity.
inline double kappa_power(double kappa, long n) {
    if (kappa == 0.0) return 0.0;
    if (n < 64) {
        double out = 1.0;
        for (long i = 0; i < n; ++i) out *= kappa;
        return out;
    }
    return std::exp(static_cast<double>(n) * std::log(kappa));
}

}  // namespace detail

inline ClosedFormBound closed_form(double alpha, long n) {
    alpha = detail::require_distortion(alpha, "closed_form");
    if (n < 1) throw out_of_domain("closed_form: n must be >= 1");
    const double p = std::sqrt(alpha);
    const double kappa = (p - 1.0) / (p + 1.0);
    const double kn = detail::kappa_power(kappa, n);
    const double q = 1.0 + 2.0 * kn / (1.0 - kn);
    const double r = 1.0 + 4.0 * kn / ((1.0 - kn) * (1.0 - kn));
    return {q, r, kappa};
}

// Running product P_n = A_n ... A_1 with each column rescaled by its
// maximum entry after every step. Column rescaling multiplies the product
// by a diagonal matrix on the right, which commutes with the next left
// factor, so current always equals P_n times a positive diagonal and every
// recorded distortion equals R(P_n). (Rescaling rows would plant the
// diagonal between factors and change the distortion.) Entries stay in
// (0, 1], so arbitrarily long products neither overflow nor underflow.
struct ProductAccumulator {
    std::optional<PositiveMatrix> current;
    std::size_t step_count = 0;
    std::vector<std::pair<std::size_t, double>> history;
};

inline PositiveMatrix rescale_columns(const PositiveMatrix& m) {
    std::vector<double> col_max(m.cols(), 0.0);
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) col_max[j] = std::max(col_max[j], m(i, j));
    std::vector<double> out;
    out.reserve(m.rows() * m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) out.push_back(m(i, j) / col_max[j]);
    return PositiveMatrix(m.rows(), m.cols(), std::move(out));
}

// Left-multiplies the accumulated product by a. Takes the accumulator by
// value so callers can move it through a fold.
inline ProductAccumulator accumulate(ProductAccumulator acc, const PositiveMatrix& a) {
    PositiveMatrix product = acc.current ? multiply(a, *acc.current) : a;
    acc.current = rescale_columns(product);
    acc.step_count += 1;
    acc.history.emplace_back(acc.step_count, distortion(*acc.current));
    return acc;
}

// Least-squares slope of log(sqrt(R_n) - 1) against n over the history
// entries that have not yet converged. For envelope-tight trajectories
// this estimates log(kappa).
inline double decay_rate(const std::vector<std::pair<std::size_t, double>>& history) {
    if (history.size() < 3)
        throw insufficient_data("decay_rate: need at least 3 history entries");
    std::vector<double> ns;
    std::vector<double> logs;
    for (const auto& [n, r] : history) {
        const double excess = std::sqrt(r) - 1.0;
        if (excess > kConvergedSlack) {
            ns.push_back(static_cast<double>(n));
            logs.push_back(std::log(excess));
        }
    }
    if (ns.empty()) throw all_converged("decay_rate: every entry is at R = 1 within tolerance");
    if (ns.size() < 3)
        throw insufficient_data("decay_rate: fewer than 3 entries above the convergence floor");
    double n_mean = 0.0, l_mean = 0.0;
    for (std::size_t i = 0; i < ns.size(); ++i) {
        n_mean += ns[i];
        l_mean += logs[i];
    }
    n_mean /= static_cast<double>(ns.size());
    l_mean /= static_cast<double>(ns.size());
    double cov = 0.0, var = 0.0;
    for (std::size_t i = 0; i < ns.size(); ++i) {
        cov += (ns[i] - n_mean) * (logs[i] - l_mean);
        var += (ns[i] - n_mean) * (ns[i] - n_mean);
    }
    if (var == 0.0) throw insufficient_data("decay_rate: history entries share a single n");
    return cov / var;
}

}  // namespace distcalc
