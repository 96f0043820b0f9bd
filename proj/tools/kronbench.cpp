#include <algorithm>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "kronsum/kernels.hpp"
#include "kronsum/kron_solve.hpp"
#include "kronsum/oracle.hpp"
#include "kronsum/pde.hpp"
#include "kronsum/tensor_ops.hpp"
#include "kronsum/verify.hpp"

namespace {

using namespace kronsum;

struct RunConfig {
    std::vector<std::size_t> sizes;
    SolveOptions opts;
    int dim = 2;
    double nu = 1.0;
    double c1 = 1.0;
    double c2 = 1.0;
    std::uint64_t seed = 42;
    std::size_t repeat = 5;
    bool check_oracle = false;
    std::string csv_path;
    std::string fixture = "sine10";
    int threads = 1; // execution hint; kernels are single-threaded
};

// "64..1024" doubles from the left endpoint; "63,127,255" is a list.
std::vector<std::size_t> parse_sizes(const std::string& text) {
    std::vector<std::size_t> out;
    const auto range_pos = text.find("..");
    if (range_pos != std::string::npos) {
        const std::size_t lo = std::stoull(text.substr(0, range_pos));
        const std::size_t hi = std::stoull(text.substr(range_pos + 2));
        if (lo == 0 || hi < lo) throw CLI::ValidationError("--n", "bad range");
        for (std::size_t n = lo; n <= hi; n *= 2) out.push_back(n);
        return out;
    }
    std::size_t start = 0;
    while (start <= text.size()) {
        const auto comma = text.find(',', start);
        const std::string tok =
            text.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
        if (!tok.empty()) out.push_back(std::stoull(tok));
        if (comma == std::string::npos) break;
        start = comma + 1;
    }
    if (out.empty()) throw CLI::ValidationError("--n", "no sizes given");
    for (const std::size_t n : out) {
        if (n == 0) throw CLI::ValidationError("--n", "sizes must be >= 1");
    }
    return out;
}

std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

class CsvSink {
public:
    explicit CsvSink(const std::string& path) {
        if (!path.empty()) {
            file_.open(path);
            if (!file_) throw std::runtime_error("cannot open csv output: " + path);
        }
    }
    std::ostream& out() { return file_.is_open() ? file_ : std::cout; }

private:
    std::ofstream file_;
};

void add_common(CLI::App* cmd, RunConfig& cfg, std::string& nspec) {
    cmd->add_option("--n", nspec, "grid sizes: list 63,127 or doubling range 64..1024");
    cmd->add_option("--tol", cfg.opts.truncation_tol, "series truncation tolerance");
    cmd->add_option("--max-terms", cfg.opts.max_terms, "cap on series length");
    cmd->add_option("--seed", cfg.seed, "random seed");
    cmd->add_option("--repeat", cfg.repeat, "timing repeats (bench)")->check(CLI::PositiveNumber);
    cmd->add_flag("--check-oracle", cfg.check_oracle, "compare against the dense LU oracle");
    cmd->add_option("--csv", cfg.csv_path, "write CSV here instead of stdout");
    cmd->add_option("--threads", cfg.threads, "execution hint (kernels are single-threaded)");
}

int cmd_poisson2d(const RunConfig& cfg) {
    CsvSink sink(cfg.csv_path);
    auto& os = sink.out();
    os << "N,h,max_error,eps_error,residual,seconds";
    if (cfg.check_oracle) os << ",oracle_relerr";
    os << "\n";
    for (const std::size_t n : cfg.sizes) {
        const pde::PoissonProblem p = cfg.fixture == "const8" ? pde::poisson2d_const_fixture(n)
                                                              : pde::poisson2d_sine_fixture(n);
        const auto r = pde::solve_poisson_2d(p, cfg.opts);
        os << n << ',' << fmt(p.grids[0].h()) << ',' << fmt(r.max_error.value_or(0.0)) << ','
           << fmt(r.eps_error.value_or(0.0)) << ',' << fmt(r.report.residual) << ','
           << fmt(r.report.elapsed);
        if (cfg.check_oracle) {
            const DenseMatrix a1 = pde::laplacian_1d(n);
            const DenseMatrix y = pde::assemble_poisson_rhs_2d(p);
            const DenseMatrix xo = oracle::oracle_solve_kron(a1, a1, y);
            os << ',' << fmt(pde::relative_error(r.field, xo));
        }
        os << "\n";
    }
    return 0;
}

int cmd_poisson3d(const RunConfig& cfg) {
    CsvSink sink(cfg.csv_path);
    auto& os = sink.out();
    os << "N,h,max_error,eps_error,residual,seconds";
    if (cfg.check_oracle) os << ",oracle_relerr";
    os << "\n";
    for (const std::size_t n : cfg.sizes) {
        const pde::PoissonProblem p = pde::poisson3d_sine_fixture(n);
        const auto r = pde::solve_poisson_3d(p, cfg.opts);
        os << n << ',' << fmt(p.grids[0].h()) << ',' << fmt(r.max_error.value_or(0.0)) << ','
           << fmt(r.eps_error.value_or(0.0)) << ',' << fmt(r.report.residual) << ','
           << fmt(r.report.elapsed);
        if (cfg.check_oracle) {
            const DenseMatrix a1 = pde::laplacian_1d(n);
            const Tensor3 y = pde::assemble_poisson_rhs_3d(p);
            const Tensor3 xo = oracle::oracle_solve_kron(a1, a1, a1, y);
            os << ',' << fmt(pde::relative_error(r.field, xo));
        }
        os << "\n";
    }
    return 0;
}

int cmd_convdiff(const RunConfig& cfg) {
    CsvSink sink(cfg.csv_path);
    auto& os = sink.out();
    os << "N,series_length,eps";
    if (cfg.check_oracle) os << ",oracle_relerr";
    os << "\n";
    for (const std::size_t n : cfg.sizes) {
        const pde::ConvDiffProblem p = pde::convdiff_fixture(n, cfg.nu, cfg.c1, cfg.c2);
        const auto r = pde::solve_convdiff_2d(p, cfg.opts);
        std::optional<double> oracle_err;
        if (cfg.check_oracle) {
            const double h = p.grid.h();
            const DenseMatrix ax = pde::fromm_factor(n, p.nu, p.c1, h);
            const DenseMatrix ay = pde::fromm_factor(n, p.nu, p.c2, h);
            DenseMatrix y(n, n);
            for (std::size_t j = 0; j < n; ++j)
                for (std::size_t i = 0; i < n; ++i) y(i, j) = p.f(p.grid.node(i), p.grid.node(j));
            const DenseMatrix xo = oracle::oracle_solve_kron(ax, ay, y);
            oracle_err = pde::relative_error(r.field, xo);
        }
        const auto& trace = r.report.error_trace;
        for (std::size_t l = 0; l < trace.size(); ++l) {
            os << n << ',' << (l + 1) << ',' << fmt(trace[l]);
            if (cfg.check_oracle) {
                if (l + 1 == trace.size()) {
                    os << ',' << fmt(*oracle_err);
                } else {
                    os << ',';
                }
            }
            os << "\n";
        }
    }
    return 0;
}

int cmd_bench(const RunConfig& cfg) {
    CsvSink sink(cfg.csv_path);
    auto& os = sink.out();
    os << "dim,N,median_seconds\n";
    for (const std::size_t n : cfg.sizes) {
        std::vector<double> times;
        const std::size_t runs = cfg.repeat;
        for (std::size_t r = 0; r < runs + 1; ++r) { // one warm-up
            double elapsed = 0.0;
            if (cfg.dim == 2) {
                const auto res = pde::solve_poisson_2d(pde::poisson2d_sine_fixture(n), cfg.opts);
                elapsed = res.report.elapsed;
            } else {
                const auto res = pde::solve_poisson_3d(pde::poisson3d_sine_fixture(n), cfg.opts);
                elapsed = res.report.elapsed;
            }
            if (r > 0) times.push_back(elapsed);
        }
        std::sort(times.begin(), times.end());
        const double median = times[times.size() / 2];
        os << cfg.dim << ',' << n << ',' << fmt(median) << "\n";
    }
    return 0;
}

int cmd_verify(const RunConfig& cfg) {
    const verify::Summary s = verify::run_all(cfg.seed);
    std::size_t passed = 0;
    for (const auto& suite : s.suites) {
        std::printf("[%s] %-55s instances=%zu worst=%.3e tol=%.1e\n",
                    suite.passed ? "PASS" : "FAIL", suite.name.c_str(), suite.instances,
                    suite.worst, suite.tolerance);
        if (suite.passed) ++passed;
    }
    std::printf("%zu/%zu suites passed (seed %llu, backend %s)\n", passed, s.suites.size(),
                static_cast<unsigned long long>(cfg.seed),
                kernels::backend_name(kernels::active_backend()).c_str());
    return s.all_passed() ? 0 : 3;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Kronecker-sum linear system solver benchmarks"};
    app.require_subcommand(1);

    RunConfig cfg;
    std::string nspec = "63";
    std::string cspec = "1,1";

    CLI::App* p2 = app.add_subcommand("poisson2d", "2D Poisson benchmark (CSV rows per N)");
    add_common(p2, cfg, nspec);
    p2->add_option("--fixture", cfg.fixture, "sine10 | const8")
        ->check(CLI::IsMember({"sine10", "const8"}));

    CLI::App* p3 = app.add_subcommand("poisson3d", "3D Poisson benchmark (CSV rows per N)");
    add_common(p3, cfg, nspec);

    CLI::App* cd = app.add_subcommand("convdiff",
                                      "2D convection-diffusion error-vs-series-length trace");
    add_common(cd, cfg, nspec);
    cd->add_option("--nu", cfg.nu, "diffusion coefficient");
    cd->add_option("--c", cspec, "convection coefficients c1,c2 (x and y)");

    CLI::App* be = app.add_subcommand("bench", "solver timing sweep");
    add_common(be, cfg, nspec);
    be->add_option("--dim", cfg.dim, "2 or 3")->check(CLI::IsMember({2, 3}));

    CLI::App* ve = app.add_subcommand("verify", "run the property-verification suites");
    add_common(ve, cfg, nspec);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e); // --help
        app.exit(e);
        return 2;
    }

    try {
        cfg.sizes = parse_sizes(nspec);
        const auto comma = cspec.find(',');
        if (comma == std::string::npos) {
            cfg.c1 = cfg.c2 = std::stod(cspec);
        } else {
            cfg.c1 = std::stod(cspec.substr(0, comma));
            cfg.c2 = std::stod(cspec.substr(comma + 1));
        }
    } catch (const CLI::Error& e) {
        std::cerr << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "bad arguments: " << e.what() << "\n";
        return 2;
    }

    try {
        if (p2->parsed()) return cmd_poisson2d(cfg);
        if (p3->parsed()) return cmd_poisson3d(cfg);
        if (cd->parsed()) return cmd_convdiff(cfg);
        if (be->parsed()) return cmd_bench(cfg);
        if (ve->parsed()) return cmd_verify(cfg);
    } catch (const kronsum::error& e) {
        std::cerr << "solver error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
