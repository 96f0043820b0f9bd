#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <array>
#include <cstdio>
#include <cstdlib>
#include <sstream>
#include <string>
#include <vector>

namespace {

struct RunResult {
    int exit_code = -1;
    std::string out;
};

RunResult run(const std::string& args) {
    const std::string cmd = std::string(KRONBENCH_BIN) + " " + args + " 2>/dev/null";
    RunResult r;
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    std::array<char, 4096> buf;
    while (std::fgets(buf.data(), buf.size(), pipe) != nullptr) r.out += buf.data();
    const int status = pclose(pipe);
    r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
}

std::vector<std::vector<std::string>> parse_csv(const std::string& text) {
    std::vector<std::vector<std::string>> rows;
    std::istringstream is(text);
    std::string line;
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        std::vector<std::string> cells;
        std::istringstream ls(line);
        std::string cell;
        while (std::getline(ls, cell, ',')) cells.push_back(cell);
        rows.push_back(std::move(cells));
    }
    return rows;
}

} // namespace

TEST_CASE("help exits zero, bad arguments exit 2") {
    CHECK(run("--help").exit_code == 0);
    CHECK(run("poisson2d --n 0..0").exit_code == 2);
    CHECK(run("nonsense").exit_code == 2);
    CHECK(run("poisson2d --fixture bogus").exit_code == 2);
}

TEST_CASE("poisson2d const fixture solves the single-node value") {
    const RunResult r = run("poisson2d --n 1 --fixture const8");
    REQUIRE(r.exit_code == 0);
    const auto rows = parse_csv(r.out);
    REQUIRE(rows.size() == 2);
    CHECK(rows[0][0] == "N");
    CHECK(rows[1][0] == "1");
    // no exact solution on this fixture; check the residual column is ~0
    const double residual = std::stod(rows[1][4]);
    CHECK(residual <= 1e-12);
}

TEST_CASE("poisson2d csv schema and convergence column") {
    const RunResult r = run("poisson2d --n 15,31");
    REQUIRE(r.exit_code == 0);
    const auto rows = parse_csv(r.out);
    REQUIRE(rows.size() == 3);
    CHECK(rows[0] == std::vector<std::string>{"N", "h", "max_error", "eps_error",
                                              "residual", "seconds"});
    const double e15 = std::stod(rows[1][2]);
    const double e31 = std::stod(rows[2][2]);
    CHECK(e15 > e31); // finer grid, smaller error
}

TEST_CASE("poisson3d oracle check column") {
    const RunResult r = run("poisson3d --n 4 --check-oracle");
    REQUIRE(r.exit_code == 0);
    const auto rows = parse_csv(r.out);
    REQUIRE(rows.size() == 2);
    REQUIRE(rows[0].back() == "oracle_relerr");
    CHECK(std::stod(rows[1].back()) <= 1e-10);
}

TEST_CASE("convdiff trace rows and oracle check") {
    const RunResult r = run("convdiff --n 8 --max-terms 9 --check-oracle");
    REQUIRE(r.exit_code == 0);
    const auto rows = parse_csv(r.out);
    REQUIRE(rows.size() == 10); // header + 9 trace rows
    CHECK(rows[1][0] == "8");
    CHECK(rows[1][1] == "1");
    CHECK(rows[9][1] == "9");
    // non-increasing up to the plateau; past it the alternating
    // partial sums may wiggle at the scale of the dropped terms
    std::vector<double> tr;
    for (std::size_t i = 1; i < rows.size(); ++i) tr.push_back(std::stod(rows[i][2]));
    const double final_eps = tr.back();
    std::size_t plateau = 0;
    while (plateau < tr.size() && tr[plateau] > 1.01 * final_eps) ++plateau;
    for (std::size_t i = 1; i <= plateau && i < tr.size(); ++i) {
        CHECK(tr[i] <= tr[i - 1] + 1e-12);
    }
    for (std::size_t i = plateau; i < tr.size(); ++i) {
        CHECK(tr[i] <= 1.01 * final_eps);
    }
    CHECK(std::stod(rows[9][3]) <= 1e-9); // oracle_relerr on the final row
}

TEST_CASE("convdiff with convection off matches the poisson field") {
    const RunResult rc = run("convdiff --n 15 --nu 1 --c 0,0 --max-terms 3");
    REQUIRE(rc.exit_code == 0);
    const auto rows = parse_csv(rc.out);
    // with no convection the trace is flat at the discretization error
    const double first = std::stod(rows[1][2]);
    const double last = std::stod(rows.back()[2]);
    CHECK(std::abs(first - last) <= 1e-12 * std::max(1.0, first));
}

TEST_CASE("csv output is deterministic apart from timing columns") {
    const std::string args = "poisson2d --n 9,17 --seed 7";
    const auto r1 = run(args);
    const auto r2 = run(args);
    REQUIRE(r1.exit_code == 0);
    REQUIRE(r2.exit_code == 0);
    const auto rows1 = parse_csv(r1.out);
    const auto rows2 = parse_csv(r2.out);
    REQUIRE(rows1.size() == rows2.size());
    for (std::size_t i = 0; i < rows1.size(); ++i) {
        REQUIRE(rows1[i].size() == rows2[i].size());
        for (std::size_t j = 0; j < rows1[i].size(); ++j) {
            if (i > 0 && j == 5) continue; // seconds
            CHECK(rows1[i][j] == rows2[i][j]);
        }
    }
}

TEST_CASE("bench produces one row per size") {
    const RunResult r = run("bench --dim 2 --n 8..16 --repeat 2");
    REQUIRE(r.exit_code == 0);
    const auto rows = parse_csv(r.out);
    REQUIRE(rows.size() == 3);
    CHECK(rows[0] == std::vector<std::string>{"dim", "N", "median_seconds"});
    CHECK(rows[1][0] == "2");
    CHECK(rows[1][1] == "8");
    CHECK(rows[2][1] == "16");

    const RunResult r3 = run("bench --dim 3 --n 4..8 --repeat 1");
    REQUIRE(r3.exit_code == 0);
    const auto rows3 = parse_csv(r3.out);
    REQUIRE(rows3.size() == 3);
    CHECK(rows3[1][0] == "3");
}

TEST_CASE("verify runs the suites and exits zero") {
    const RunResult r = run("verify --seed 42");
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("suites passed") != std::string::npos);
}
