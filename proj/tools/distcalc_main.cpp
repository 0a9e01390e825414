// distcalc: command-line frontend for the distortion calculus of strictly
// positive matrices. Every command buffers its full output and writes it
// in one piece, with no timestamps or locale-dependent formatting, so a
// given invocation (flags + seed + input files) is byte-reproducible.

#include <cmath>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "distcalc/distcalc.hpp"

namespace {

constexpr int kExitSuccess = 0;
constexpr int kExitUsage = 1;      // bad flags, unreadable or malformed input
constexpr int kExitDomain = 2;     // arguments outside a formula's domain
constexpr int kExitViolation = 3;  // a proved bound failed numerically

// Slack for the bound checks wired into commands; the bounds hold up to
// rounding error, so anything past this is worth alarming on.
constexpr double kAlarmSlack = 1e-9;

std::string fmt6(double v) { return distcalc::format_double(v, 6); }
std::string fmt17(double v) { return distcalc::format_double(v, 17); }

int emit(const std::string& path, const std::string& text) {
    if (path.empty()) {
        std::cout << text << std::flush;
        return kExitSuccess;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        std::cerr << "error: cannot open output file '" << path << "'\n";
        return kExitUsage;
    }
    out << text;
    return kExitSuccess;
}

std::vector<distcalc::PositiveMatrix> read_input(const std::string& path) {
    auto matrices = distcalc::read_matrices(path);
    if (matrices.empty()) throw distcalc::parse_error(0, 0, "no matrices in '" + path + "'");
    return matrices;
}

int cmd_distortion(const std::string& input, const std::string& output) {
    const auto matrices = read_input(input);
    std::ostringstream os;
    for (std::size_t k = 0; k < matrices.size(); ++k) {
        const auto& m = matrices[k];
        const double r = distcalc::distortion(m);
        const double p = std::sqrt(r);
        os << "matrix " << (k + 1) << ": " << m.rows() << "x" << m.cols() << "\n"
           << "  R       = " << fmt6(r) << "\n"
           << "  sqrt(R) = " << fmt6(p) << "\n"
           << "  kappa   = " << fmt6((p - 1.0) / (p + 1.0)) << "\n"
           << "  log(R)  = " << fmt6(std::log(r)) << "\n";
    }
    return emit(output, os.str());
}

int cmd_envelope(double alpha, double beta, const std::string& output) {
    std::ostringstream os;
    os << "phi    = " << fmt6(distcalc::phi(alpha, beta)) << "\n"
       << "t_star = " << fmt6(distcalc::t_star(alpha, beta)) << "\n"
       << "psi    = " << fmt6(distcalc::psi(std::sqrt(alpha), std::sqrt(beta))) << "\n";
    return emit(output, os.str());
}

int cmd_witness(double alpha, double beta, double u, const std::string& output) {
    const auto w = distcalc::witness_pair(alpha, beta, u);
    std::ostringstream os;
    os << "# witness pair: alpha = " << fmt17(alpha) << ", beta = " << fmt17(beta)
       << ", u = " << fmt17(u) << "\n"
       << "# achieved R(AB) = " << fmt17(w.achieved) << "\n"
       << "# target phi     = " << fmt17(w.target) << "\n"
       << "# A\n";
    distcalc::write_matrix(os, w.a);
    os << "\n# B\n";
    distcalc::write_matrix(os, w.b);
    os << "\n# AB\n";
    distcalc::write_matrix(os, distcalc::multiply(w.a, w.b));
    return emit(output, os.str());
}

// File order is application order: the file lists A_1, A_2, ... and the
// running product is P_n = A_n ... A_1.
int cmd_propagate(const std::string& input, const std::string& output) {
    const auto factors = read_input(input);
    distcalc::ProductAccumulator acc;
    std::vector<double> factor_r;
    std::vector<double> p_bounds;
    double alpha_max = 1.0;
    for (std::size_t k = 0; k < factors.size(); ++k) {
        const double r = distcalc::distortion(factors[k]);
        factor_r.push_back(r);
        p_bounds.push_back(std::sqrt(r));
        alpha_max = std::max(alpha_max, r);
        try {
            acc = distcalc::accumulate(std::move(acc), factors[k]);
        } catch (const distcalc::dimension_mismatch& e) {
            throw distcalc::dimension_mismatch("matrices " + std::to_string(k) + " and " +
                                               std::to_string(k + 1) + ": " + e.what());
        }
    }
    const auto traj = distcalc::propagate(p_bounds);
    std::ostringstream os;
    os << "# n\tR_factor\tR_product\tq_sq\tuniform_bound\n";
    bool violated = false;
    for (std::size_t k = 0; k < factors.size(); ++k) {
        const double actual = acc.history[k].second;
        const double q_sq = traj.r_bound[k];
        if (actual > q_sq * (1.0 + kAlarmSlack)) violated = true;
        os << (k + 1) << '\t' << fmt17(factor_r[k]) << '\t' << fmt17(actual) << '\t'
           << fmt17(q_sq) << '\t'
           << fmt17(distcalc::closed_form(alpha_max, static_cast<long>(k) + 1).r_bound) << '\n';
    }
    if (violated) os << "# VIOLATION: a product distortion exceeded its envelope bound\n";
    const int rc = emit(output, os.str());
    return rc != kExitSuccess ? rc : (violated ? kExitViolation : kExitSuccess);
}

int cmd_ensemble(const distcalc::EnsembleConfig& cfg, const std::string& output) {
    const auto result = distcalc::run_ensemble(cfg);
    std::ostringstream os;
    os << "# ensemble: dimension=" << cfg.dimension << " length=" << cfg.length
       << " alpha=" << fmt17(cfg.alpha) << " trials=" << cfg.trials << " seed=" << cfg.seed << "\n"
       << "# factors: D1 (J + eps E) D2, E uniform on [0,1), diagonal scales random powers of two,\n"
       << "#          eps bisected so that R(factor) lands in [sqrt(alpha), alpha]; E is redrawn\n"
       << "#          when no coupling reaches that band\n"
       << "# n\tmin\tmedian\tmax\tbound\n";
    for (const auto& row : result.rows)
        os << row.n << '\t' << fmt17(row.min) << '\t' << fmt17(row.median) << '\t'
           << fmt17(row.max) << '\t' << fmt17(row.bound) << '\n';
    if (result.violations)
        os << "# VIOLATION: " << result.violations << " product distortions exceeded the bound\n";
    const int rc = emit(output, os.str());
    return rc != kExitSuccess ? rc : (result.violations ? kExitViolation : kExitSuccess);
}

int cmd_bb_compare(double r, double h_max, std::size_t samples, const std::string& output) {
    const auto table = distcalc::comparison_curve(std::sqrt(r), h_max, samples);
    std::ostringstream os;
    os << "# h\ttheta\tbb_line\tsaturation\n";
    for (const auto& pt : table.points)
        os << fmt17(pt.h) << '\t' << fmt17(pt.theta) << '\t' << fmt17(pt.bb_line) << '\t'
           << fmt17(pt.saturation) << '\n';
    return emit(output, os.str());
}

// Picks the row pair of A and column pair of B behind the extremal 2x2
// block of AB, runs the four-point collapse on them, and compares the
// resulting cross ratios against the envelope.
int cmd_reduce(const std::string& input, const std::string& output) {
    const auto matrices = read_input(input);
    if (matrices.size() != 2)
        throw distcalc::parse_error(0, 0, "reduce expects exactly two matrices, got " +
                                              std::to_string(matrices.size()));
    const auto& a = matrices[0];
    const auto& b = matrices[1];
    const auto ab = distcalc::multiply(a, b);
    const auto block = distcalc::extremal_block(ab);
    const auto x = a.row(block.i);
    const auto y = a.row(block.j);
    const auto u = b.column(block.k);
    const auto v = b.column(block.l);
    const auto collapsed = distcalc::four_point_collapse(x, y, u, v);
    const double envelope = distcalc::phi(distcalc::dist(x, y), distcalc::dist(u, v));
    const bool violated = collapsed.value_before > collapsed.value_after * (1.0 + kAlarmSlack) ||
                          collapsed.value_after > envelope * (1.0 + kAlarmSlack);
    std::ostringstream os;
    os << "# rows " << (block.i + 1) << "," << (block.j + 1) << " of A and columns "
       << (block.k + 1) << "," << (block.l + 1) << " of B attain R(AB)\n"
       << "F_d       = " << fmt6(collapsed.value_before) << "\n"
       << "F_2       = " << fmt6(collapsed.value_after) << "\n"
       << "phi       = " << fmt6(envelope) << "\n"
       << "Dist_rows = " << fmt6(distcalc::dist(x, y)) << "\n"
       << "Dist_cols = " << fmt6(distcalc::dist(u, v)) << "\n"
       << "# collapsed configuration, rows: x' y' u' v'\n";
    for (const auto* vec : {&collapsed.x2, &collapsed.y2, &collapsed.u2, &collapsed.v2})
        os << fmt17((*vec)[0]) << ' ' << fmt17((*vec)[1]) << '\n';
    if (violated) os << "# VIOLATION: cross-ratio chain F_d <= F_2 <= phi failed\n";
    const int rc = emit(output, os.str());
    return rc != kExitSuccess ? rc : (violated ? kExitViolation : kExitSuccess);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"distortion calculus for products of strictly positive matrices"};
    app.require_subcommand(1);

    std::string input;
    std::string output;
    double alpha = 9.0;
    double beta = 1.0;
    double u = 1.0;
    double r = 1.0;
    double h_max = 12.0;
    std::size_t samples = 400;
    distcalc::EnsembleConfig cfg;

    auto* sc_distortion =
        app.add_subcommand("distortion", "report R, sqrt(R), kappa and log R per matrix");
    sc_distortion->add_option("--input", input, "matrix file")->required();
    sc_distortion->add_option("--output", output, "output path (default stdout)");

    auto* sc_envelope =
        app.add_subcommand("envelope", "evaluate phi, t_star and psi for given caps");
    sc_envelope->add_option("--alpha", alpha, "distortion cap for the left factor")->required();
    sc_envelope->add_option("--beta", beta, "distortion cap for the right factor")->required();
    sc_envelope->add_option("--output", output, "output path (default stdout)");

    auto* sc_witness =
        app.add_subcommand("witness", "emit a 2x2 pair attaining the envelope");
    sc_witness->add_option("--alpha", alpha, "distortion of the left factor")->required();
    sc_witness->add_option("--beta", beta, "distortion of the right factor")->required();
    sc_witness->add_option("--u", u, "free coupling parameter (default 1)");
    sc_witness->add_option("--output", output, "output path (default stdout)");

    auto* sc_propagate =
        app.add_subcommand("propagate", "bound table along the product of the listed factors");
    sc_propagate->add_option("--input", input, "matrix file, one factor per block")->required();
    sc_propagate->add_option("--output", output, "output path (default stdout)");

    auto* sc_ensemble =
        app.add_subcommand("ensemble", "random product ensemble versus the closed-form bound");
    sc_ensemble->add_option("--dimension", cfg.dimension, "factor dimension (default 3)");
    sc_ensemble->add_option("--length", cfg.length, "factors per product (default 10)");
    sc_ensemble->add_option("--alpha", cfg.alpha, "per-factor distortion cap (default 9)");
    sc_ensemble->add_option("--trials", cfg.trials, "independent products (default 100)");
    sc_ensemble->add_option("--seed", cfg.seed, "RNG seed (default 0)");
    sc_ensemble->add_option("--output", output, "output path (default stdout)");

    auto* sc_bb =
        app.add_subcommand("bb-compare", "sharp contraction curve versus the linear coefficient");
    sc_bb->add_option("--r", r, "matrix distortion R")->required();
    sc_bb->add_option("--h-max", h_max, "curve domain endpoint (default 12)");
    sc_bb->add_option("--samples", samples, "grid points (default 400)");
    sc_bb->add_option("--output", output, "output path (default stdout)");

    auto* sc_reduce =
        app.add_subcommand("reduce", "four-point collapse of a two-matrix product");
    sc_reduce->add_option("--input", input, "matrix file with exactly two matrices")->required();
    sc_reduce->add_option("--output", output, "output path (default stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (sc_distortion->parsed()) return cmd_distortion(input, output);
        if (sc_envelope->parsed()) return cmd_envelope(alpha, beta, output);
        if (sc_witness->parsed()) return cmd_witness(alpha, beta, u, output);
        if (sc_propagate->parsed()) return cmd_propagate(input, output);
        if (sc_ensemble->parsed()) return cmd_ensemble(cfg, output);
        if (sc_bb->parsed()) return cmd_bb_compare(r, h_max, samples, output);
        if (sc_reduce->parsed()) return cmd_reduce(input, output);
    } catch (const distcalc::parse_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const distcalc::error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitDomain;
    }
    return kExitUsage;
}
