#include "kronsum/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "kronsum/kernels.hpp"
#include "kronsum/tensor_ops.hpp"

namespace kronsum::oracle {

DenseLU lu_factor(const DenseMatrix& a) {
    if (!a.is_square()) throw dimension_error("lu_factor needs a square matrix");
    const std::size_t n = a.rows();
    const auto& kern = kernels::active();

    DenseLU out;
    out.lu = a;
    out.pivots.resize(n);
    DenseMatrix& lu = out.lu;

    const double scale = a.max_abs();
    const double pivot_tol = 1e3 * std::numeric_limits<double>::epsilon() * scale;

    for (std::size_t k = 0; k < n; ++k) {
        std::size_t piv = k;
        double best = std::abs(lu(k, k));
        for (std::size_t i = k + 1; i < n; ++i) {
            const double v = std::abs(lu(i, k));
            if (v > best) {
                best = v;
                piv = i;
            }
        }
        out.pivots[k] = piv;
        if (best <= pivot_tol) {
            throw singular_matrix_error("matrix is singular to working precision");
        }
        if (piv != k) {
            for (std::size_t j = 0; j < n; ++j) std::swap(lu(k, j), lu(piv, j));
        }
        const cplx inv_piv = 1.0 / lu(k, k);
        for (std::size_t i = k + 1; i < n; ++i) lu(i, k) *= inv_piv;
        for (std::size_t j = k + 1; j < n; ++j) {
            kern.axpy(n - k - 1, -lu(k, j), &lu(k + 1, k), &lu(k + 1, j));
        }
    }

    double umax = 0.0;
    for (std::size_t j = 0; j < n; ++j)
        for (std::size_t i = 0; i <= j; ++i) umax = std::max(umax, std::abs(lu(i, j)));
    out.growth_factor = scale > 0.0 ? umax / scale : 0.0;
    return out;
}

std::vector<cplx> lu_solve(const DenseLU& f, const std::vector<cplx>& y) {
    const std::size_t n = f.lu.rows();
    if (y.size() != n) throw dimension_error("right-hand side length mismatch");
    std::vector<cplx> x = y;
    for (std::size_t k = 0; k < n; ++k) {
        if (f.pivots[k] != k) std::swap(x[k], x[f.pivots[k]]);
    }
    // Forward: L z = P y (unit lower triangle).
    for (std::size_t k = 0; k < n; ++k) {
        for (std::size_t i = k + 1; i < n; ++i) x[i] -= f.lu(i, k) * x[k];
    }
    // Backward: U x = z.
    for (std::size_t k = n; k-- > 0;) {
        x[k] /= f.lu(k, k);
        for (std::size_t i = 0; i < k; ++i) x[i] -= f.lu(i, k) * x[k];
    }
    return x;
}

namespace {

constexpr std::size_t kOrderGuard = 4096;

void check_capacity(std::size_t order) {
    if (order > kOrderGuard) {
        throw capacity_error("materialized Kronecker sum would exceed order 4096");
    }
}

} // namespace

DenseMatrix oracle_solve_kron(const DenseMatrix& a1, const DenseMatrix& a2,
                              const DenseMatrix& y) {
    if (!a1.is_square() || !a2.is_square()) throw dimension_error("factors must be square");
    if (a1.rows() != y.rows() || a2.rows() != y.cols()) {
        throw dimension_error("factor orders do not match the right-hand side");
    }
    check_capacity(a1.rows() * a2.rows());
    const DenseMatrix full = kronecker_sum2(a2, a1); // mode-2 factor on the slow index
    const DenseLU f = lu_factor(full);
    return unvec_matrix(lu_solve(f, vec_matrix(y)), y.rows(), y.cols());
}

Tensor3 oracle_solve_kron(const DenseMatrix& a1, const DenseMatrix& a2,
                          const DenseMatrix& a3, const Tensor3& y) {
    if (!a1.is_square() || !a2.is_square() || !a3.is_square()) {
        throw dimension_error("factors must be square");
    }
    if (a1.rows() != y.dim(0) || a2.rows() != y.dim(1) || a3.rows() != y.dim(2)) {
        throw dimension_error("factor orders do not match the right-hand side");
    }
    check_capacity(a1.rows() * a2.rows() * a3.rows());
    const DenseMatrix full = kronecker_sum3(a3, a2, a1);
    const DenseLU f = lu_factor(full);
    return unvec_tensor(lu_solve(f, vec_tensor(y)), y.dim(0), y.dim(1), y.dim(2));
}

} // namespace kronsum::oracle
