#include "kronsum/eig.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>
#include <vector>

#include "hessenberg.hpp"
#include "kronsum/kernels.hpp"

namespace kronsum {
namespace {

double sign_like(double a, double b) { return b < 0.0 ? -std::abs(a) : std::abs(a); }

// Implicit-shift QL iteration on a real symmetric tridiagonal matrix
// (diagonal d, subdiagonal e), rotations accumulated into the complex
// columns of z. Classic tql2 scheme; 30-sweep cap per eigenvalue.
void tql2(std::vector<double>& d, std::vector<double>& e, DenseMatrix& z) {
    const std::size_t n = d.size();
    if (n <= 1) return;
    const auto& kern = kernels::active();
    const double eps = std::numeric_limits<double>::epsilon();

    for (std::size_t l = 0; l < n; ++l) {
        std::size_t iter = 0;
        std::size_t m;
        do {
            for (m = l; m + 1 < n; ++m) {
                const double dd = std::abs(d[m]) + std::abs(d[m + 1]);
                if (std::abs(e[m]) <= eps * dd) break;
            }
            if (m != l) {
                if (iter++ == 30) {
                    throw convergence_error("tridiagonal QL failed to converge", l);
                }
                double g = (d[l + 1] - d[l]) / (2.0 * e[l]);
                double r = std::hypot(g, 1.0);
                g = d[m] - d[l] + e[l] / (g + sign_like(r, g));
                double s = 1.0, c = 1.0, p = 0.0;
                bool underflow = false;
                for (std::size_t i = m; i-- > l;) {
                    double f = s * e[i];
                    const double b = c * e[i];
                    r = std::hypot(f, g);
                    e[i + 1] = r;
                    if (r == 0.0) {
                        d[i + 1] -= p;
                        e[m] = 0.0;
                        underflow = true;
                        break;
                    }
                    s = f / r;
                    c = g / r;
                    g = d[i + 1] - p;
                    r = (d[i] - g) * s + 2.0 * c * b;
                    p = s * r;
                    d[i + 1] = g + p;
                    g = c * r - b;
                    kern.rot(n, z.col(i), z.col(i + 1), c, cplx(-s, 0.0));
                }
                if (underflow) continue;
                d[l] -= p;
                e[l] = g;
                e[m] = 0.0;
            }
        } while (m != l);
    }
}

void sort_ascending(std::vector<double>& d, DenseMatrix& z) {
    const std::size_t n = d.size();
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return d[a] < d[b]; });
    std::vector<double> ds(n);
    DenseMatrix zs(z.rows(), z.cols());
    for (std::size_t j = 0; j < n; ++j) {
        ds[j] = d[order[j]];
        std::copy(z.col(order[j]), z.col(order[j]) + z.rows(), zs.col(j));
    }
    d = std::move(ds);
    z = std::move(zs);
}

} // namespace

EigenDecomposition hermitian_eig(const DenseMatrix& a) {
    if (!a.is_square()) throw dimension_error("hermitian_eig needs a square matrix");
    const std::size_t n = a.rows();
    if (n == 0) throw dimension_error("empty matrix");

    double herm_defect = 0.0;
    for (std::size_t j = 0; j < n; ++j)
        for (std::size_t i = 0; i < n; ++i) {
            herm_defect += std::norm(a(i, j) - std::conj(a(j, i)));
        }
    const double anorm = a.frobenius_norm();
    if (std::sqrt(herm_defect) > 1e-12 * std::max(anorm, 1e-300)) {
        throw precondition_error(
            "matrix is not Hermitian to 1e-12 relative; route non-normal factors "
            "through the Schur-based general solver");
    }

    // Hessenberg form of a Hermitian matrix is tridiagonal up to
    // roundoff; absorb the subdiagonal phases so it becomes real.
    auto [h, q] = detail::hessenberg_reduce(a);
    std::vector<double> d(n), e(n, 0.0);
    cplx phase{1.0, 0.0};
    for (std::size_t i = 0; i < n; ++i) {
        d[i] = h(i, i).real();
        if (i + 1 < n) {
            // phi_{i+1} = phi_i * e_i/|e_i| makes conj(phi_{i+1}) e_i phi_i = |e_i|.
            const cplx sub = h(i + 1, i);
            const double mag = std::abs(sub);
            cplx next = phase;
            if (mag > 0.0) next = phase * (sub / mag);
            // scale column i+1 of q by its phase
            for (std::size_t r = 0; r < n; ++r) q(r, i + 1) *= next;
            e[i] = mag;
            phase = next;
        }
    }

    tql2(d, e, q);
    sort_ascending(d, q);
    return {std::move(q), std::move(d)};
}

EigenDecomposition closed_form_laplacian_eig(std::size_t n) {
    if (n == 0) throw dimension_error("closed_form_laplacian_eig needs N >= 1");
    const double np1 = static_cast<double>(n + 1);
    std::vector<double> lambda(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double s = std::sin(static_cast<double>(i + 1) * std::numbers::pi / (2.0 * np1));
        lambda[i] = 4.0 * s * s;
    }
    // U = sqrt(2/(N+1)) sin(pi/(N+1) * [1..N]^T [1..N]), evaluated on
    // the outer-product index grid.
    const double scale = std::sqrt(2.0 / np1);
    DenseMatrix u(n, n);
    for (std::size_t j = 0; j < n; ++j)
        for (std::size_t i = 0; i < n; ++i) {
            const double kij = static_cast<double>((i + 1) * (j + 1));
            u(i, j) = scale * std::sin(kij * std::numbers::pi / np1);
        }
    return {std::move(u), std::move(lambda)};
}

} // namespace kronsum
