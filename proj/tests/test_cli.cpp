#include <catch2/catch_amalgamated.hpp>

#include <sys/wait.h>
#include <unistd.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "distcalc/distcalc.hpp"

namespace {

namespace fs = std::filesystem;

struct RunResult {
    int exit_code;
    std::string out;
    std::string err;
};

fs::path scratch_dir() {
    static const fs::path dir = [] {
        const auto d = fs::temp_directory_path() /
                       ("distcalc_cli_test_" + std::to_string(::getpid()));
        fs::create_directories(d);
        return d;
    }();
    return dir;
}

fs::path scratch_file(const std::string& stem) {
    static int counter = 0;
    return scratch_dir() / (stem + "_" + std::to_string(counter++) + ".txt");
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

fs::path write_scratch(const std::string& stem, const std::string& text) {
    const auto p = scratch_file(stem);
    std::ofstream(p, std::ios::binary) << text;
    return p;
}

RunResult run_cli(const std::string& args) {
    const char* bin = std::getenv("DISTCALC_CLI");
    REQUIRE(bin != nullptr);
    const auto out = scratch_file("stdout");
    const auto err = scratch_file("stderr");
    const std::string command =
        "\"" + std::string(bin) + "\" " + args + " > " + out.string() + " 2> " + err.string();
    const int status = std::system(command.c_str());
    const int code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return {code, slurp(out), slurp(err)};
}

std::vector<std::vector<double>> parse_table(const std::string& text) {
    std::vector<std::vector<double>> rows;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        std::vector<double> row;
        std::istringstream fields(line);
        std::string field;
        while (fields >> field) row.push_back(std::stod(field));
        rows.push_back(std::move(row));
    }
    return rows;
}

}  // namespace

TEST_CASE("cli rejects bad invocations with exit code 1") {
    CHECK(run_cli("").exit_code == 1);
    CHECK(run_cli("no-such-command").exit_code == 1);
    CHECK(run_cli("distortion").exit_code == 1);  // missing --input
    CHECK(run_cli("envelope --alpha 4").exit_code == 1);
    CHECK(run_cli("distortion --input /nonexistent/matrices.txt").exit_code == 1);
}

TEST_CASE("cli reports domain errors with exit code 2") {
    const auto bad = run_cli("envelope --alpha 0.5 --beta 2");
    CHECK(bad.exit_code == 2);
    CHECK(bad.err.find("error:") != std::string::npos);

    const auto negative = write_scratch("negative", "1 2\n3 -4\n");
    CHECK(run_cli("distortion --input " + negative.string()).exit_code == 2);
}

TEST_CASE("cli envelope prints phi, t_star and psi") {
    const auto res = run_cli("envelope --alpha 4 --beta 4");
    CHECK(res.exit_code == 0);
    CHECK(res.out ==
          "phi    = 1.5625\n"
          "t_star = 0.25\n"
          "psi    = 1.25\n");
}

TEST_CASE("cli distortion reports each matrix in the file") {
    const auto input = write_scratch("matrices",
                                     "1 2\n3 4\n"
                                     "\n"
                                     "1 1\n1 9\n"
                                     "\n"
                                     "5 3 2\n");
    const auto res = run_cli("distortion --input " + input.string());
    CHECK(res.exit_code == 0);
    CHECK(res.out.find("matrix 1: 2x2\n  R       = 1.5\n") != std::string::npos);
    CHECK(res.out.find("matrix 2: 2x2\n  R       = 9\n") != std::string::npos);
    CHECK(res.out.find("  kappa   = 0.5\n") != std::string::npos);
    CHECK(res.out.find("matrix 3: 1x3\n  R       = 1\n") != std::string::npos);
}

TEST_CASE("cli witness emits a parseable extremal pair") {
    const auto out_path = scratch_file("witness");
    const auto res = run_cli("witness --alpha 4 --beta 4 --output " + out_path.string());
    CHECK(res.exit_code == 0);
    CHECK(res.out.empty());

    const std::string text = slurp(out_path);
    CHECK(text.find("# achieved R(AB) = 1.5625\n") != std::string::npos);
    CHECK(text.find("# target phi     = 1.5625\n") != std::string::npos);

    const auto ms = distcalc::read_matrices(out_path.string());
    REQUIRE(ms.size() == 3);
    CHECK(ms[0].entries() == std::vector<double>{1, 1, 1, 4});
    CHECK(ms[1].entries() == std::vector<double>{1, 1, 0.25, 1});
    CHECK(ms[2].entries() == std::vector<double>{1.25, 2, 2, 5});
}

TEST_CASE("cli propagate tracks the witness product exactly") {
    // file order is application order, so B comes first and P_2 = A B
    const auto input = write_scratch("factors",
                                     "1 1\n0.25 1\n"
                                     "\n"
                                     "1 1\n1 4\n");
    const auto res = run_cli("propagate --input " + input.string());
    CHECK(res.exit_code == 0);
    CHECK(res.out.rfind("# n\tR_factor\tR_product\tq_sq\tuniform_bound\n", 0) == 0);

    const auto rows = parse_table(res.out);
    REQUIRE(rows.size() == 2);
    REQUIRE(rows[0].size() == 5);
    CHECK(rows[0][0] == 1.0);
    CHECK(rows[0][1] == 4.0);
    CHECK(rows[0][2] == 4.0);
    CHECK(rows[0][3] == 4.0);
    CHECK(rows[0][4] == Catch::Approx(4.0).epsilon(1e-12));
    CHECK(rows[1][0] == 2.0);
    CHECK(rows[1][1] == 4.0);
    CHECK(rows[1][2] == Catch::Approx(1.5625).epsilon(1e-12));
    CHECK(rows[1][3] == 1.5625);
    CHECK(rows[1][4] == Catch::Approx(1.5625).epsilon(1e-12));
}

TEST_CASE("cli propagate explains dimension mismatches") {
    const auto input = write_scratch("mismatch",
                                     "1 2\n3 4\n"
                                     "\n"
                                     "1 2 3\n4 5 6\n7 8 9\n");
    const auto res = run_cli("propagate --input " + input.string());
    CHECK(res.exit_code == 2);
    CHECK(res.err.find("matrices 1 and 2") != std::string::npos);
}

TEST_CASE("cli ensemble stays under the bound and is byte reproducible") {
    const std::string args = "ensemble --dimension 2 --length 5 --alpha 9 --trials 20 --seed 7";
    const auto first = run_cli(args);
    CHECK(first.exit_code == 0);
    CHECK(first.out.find("# ensemble: dimension=2 length=5 alpha=9 trials=20 seed=7\n") !=
          std::string::npos);

    const auto rows = parse_table(first.out);
    REQUIRE(rows.size() == 5);
    for (std::size_t i = 0; i < rows.size(); ++i) {
        REQUIRE(rows[i].size() == 5);
        CHECK(rows[i][0] == static_cast<double>(i + 1));
        CHECK(rows[i][1] <= rows[i][2]);
        CHECK(rows[i][2] <= rows[i][3]);
        CHECK(rows[i][3] <= rows[i][4] * (1.0 + 1e-9));
    }

    const auto second = run_cli(args);
    CHECK(second.out == first.out);
}

TEST_CASE("cli bb-compare tabulates the contraction curve") {
    const auto res = run_cli("bb-compare --r 4 --h-max 12 --samples 7");
    CHECK(res.exit_code == 0);
    CHECK(res.out.rfind("# h\ttheta\tbb_line\tsaturation\n", 0) == 0);

    const auto rows = parse_table(res.out);
    REQUIRE(rows.size() == 7);
    const double saturation = 2.0 * std::log(2.0);
    for (std::size_t i = 0; i < rows.size(); ++i) {
        REQUIRE(rows[i].size() == 4);
        CHECK(rows[i][0] == 2.0 * static_cast<double>(i));
        CHECK(rows[i][2] == Catch::Approx(rows[i][0] / 3.0).margin(1e-15));
        CHECK(rows[i][3] == saturation);
        if (i) CHECK(rows[i][1] > rows[i - 1][1]);
        CHECK(rows[i][1] <= rows[i][2] + 1e-12);
        CHECK(rows[i][1] <= saturation + 1e-12);
    }
    // the curve is the log of the envelope along e^h
    const double expected = std::log(distcalc::phi(4.0, std::exp(2.0)));
    CHECK(rows[1][1] == Catch::Approx(expected).epsilon(1e-12));
}

TEST_CASE("cli reduce collapses the extremal block of a product") {
    const auto tight = write_scratch("reduce_tight",
                                     "1 1\n1 4\n"
                                     "\n"
                                     "1 1\n0.25 1\n");
    const auto res = run_cli("reduce --input " + tight.string());
    CHECK(res.exit_code == 0);
    CHECK(res.out.find("F_d       = 1.5625\n") != std::string::npos);
    CHECK(res.out.find("F_2       = 1.5625\n") != std::string::npos);
    CHECK(res.out.find("phi       = 1.5625\n") != std::string::npos);
    CHECK(res.out.find("Dist_rows = 4\n") != std::string::npos);
    CHECK(res.out.find("Dist_cols = 4\n") != std::string::npos);

    const auto flat = write_scratch("reduce_flat",
                                    "1 2\n2 4\n"
                                    "\n"
                                    "1 1\n1 1\n");
    const auto rank_one = run_cli("reduce --input " + flat.string());
    CHECK(rank_one.exit_code == 0);
    CHECK(rank_one.out.find("F_d       = 1\n") != std::string::npos);
    CHECK(rank_one.out.find("F_2       = 1\n") != std::string::npos);
    CHECK(rank_one.out.find("phi       = 1\n") != std::string::npos);

    const auto lonely = write_scratch("reduce_one", "1 2\n3 4\n");
    CHECK(run_cli("reduce --input " + lonely.string()).exit_code == 1);
}

TEST_CASE("cli --output matches stdout byte for byte") {
    const auto res = run_cli("envelope --alpha 9 --beta 4");
    const auto path = scratch_file("envelope");
    const auto filed = run_cli("envelope --alpha 9 --beta 4 --output " + path.string());
    CHECK(filed.exit_code == 0);
    CHECK(filed.out.empty());
    CHECK(slurp(path) == res.out);
}
