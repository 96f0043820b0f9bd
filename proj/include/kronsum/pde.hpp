#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "kronsum/dense_matrix.hpp"
#include "kronsum/kron_solve.hpp"
#include "kronsum/tensor3.hpp"

namespace kronsum::pde {

// Uniform grid of N interior points on (a, b): h = (b-a)/(N+1),
// x_i = a + i*h for i = 1..N.
struct Grid1D {
    std::size_t n = 0;
    double a = 0.0;
    double b = 1.0;

    double h() const { return (b - a) / static_cast<double>(n + 1); }
    double node(std::size_t i) const { return a + static_cast<double>(i + 1) * h(); } // i 0-based
};

// u_xx + u_yy (+ u_zz) = f with Dirichlet data g on the boundary.
// Fields are functions of (x, y, z); 2D problems ignore z.
struct PoissonProblem {
    int dims = 2;
    std::vector<Grid1D> grids; // one per axis, equal spacing required
    std::function<double(double, double, double)> f;
    std::function<double(double, double, double)> g;
    std::function<double(double, double, double)> exact; // optional (null = none)
};

// -nu lap(u) + c1 u_x + c2 u_y = f on a square grid with homogeneous
// Dirichlet data; c1 pairs with x (mode 1), c2 with y (mode 2).
struct ConvDiffProblem {
    Grid1D grid;
    double nu = 1.0;
    double c1 = 1.0;
    double c2 = 1.0;
    std::function<double(double, double)> f;
    std::function<double(double, double)> exact; // optional
};

struct PoissonResult2D {
    DenseMatrix field; // interior nodes, (i,j) = (x_i, y_j)
    SolveReport report;
    std::optional<double> max_error;
    std::optional<double> eps_error;
};

struct PoissonResult3D {
    Tensor3 field;
    SolveReport report;
    std::optional<double> max_error;
    std::optional<double> eps_error;
};

struct ConvDiffResult {
    DenseMatrix field;
    SolveReport report; // error_trace holds eps after each series length
    std::optional<double> max_error;
    std::optional<double> eps_error;
};

// N x N tridiagonal (-1, 2, -1), unscaled: the 1/h^2 factor is folded
// into the right-hand side.
DenseMatrix laplacian_1d(std::size_t n);

// Y(interior node) = -h^2 f(node) + sum of g over adjacent boundary
// nodes, consistent with the unscaled Kronecker-sum Laplacian.
DenseMatrix assemble_poisson_rhs_2d(const PoissonProblem& p);
Tensor3 assemble_poisson_rhs_3d(const PoissonProblem& p);

PoissonResult2D solve_poisson_2d(const PoissonProblem& p, const SolveOptions& opts = {});
PoissonResult3D solve_poisson_3d(const PoissonProblem& p, const SolveOptions& opts = {});

// (nu/h^2) tridiag(-1,2,-1) + (c/(4h)) B where B carries the Fromm
// convection stencil: diagonal 3, superdiagonal -5, second
// superdiagonal 1, subdiagonal 1; no boundary-row modification.
DenseMatrix fromm_factor(std::size_t n, double nu, double c, double h);

ConvDiffResult solve_convdiff_2d(const ConvDiffProblem& p, const SolveOptions& opts = {});

// ||exact - numeric||_2 / ||exact||_2 over all entries.
double relative_error(const DenseMatrix& numeric, const DenseMatrix& exact);
double relative_error(const Tensor3& numeric, const Tensor3& exact);

// Standard fixtures used by the benchmark CLI and tests.

// u = sin(10 pi x) sin(10 pi y) on [-1,1]^2, zero boundary.
PoissonProblem poisson2d_sine_fixture(std::size_t n);
// f = -8 constant source on [0,1]^2, zero boundary (exact value at the
// single N=1 node is 0.5).
PoissonProblem poisson2d_const_fixture(std::size_t n);
// u = sin(pi x) sin(pi y) sin(pi z) on [0,1]^3, zero boundary.
PoissonProblem poisson3d_sine_fixture(std::size_t n);
// u = 16(x - x^2)(y - y^2) on [0,1]^2 with the given coefficients.
ConvDiffProblem convdiff_fixture(std::size_t n, double nu, double c1, double c2);

} // namespace kronsum::pde
