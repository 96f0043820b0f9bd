#include "kronsum/schur.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "hessenberg.hpp"
#include "kronsum/kernels.hpp"

namespace kronsum {
namespace {

// Eigenvalue of the trailing 2x2 of the active block closest to its
// bottom-right entry (Wilkinson shift, complex arithmetic).
cplx wilkinson_shift(const DenseMatrix& h, std::size_t i) {
    const cplx a = h(i - 1, i - 1);
    const cplx b = h(i - 1, i);
    const cplx c = h(i, i - 1);
    const cplx d = h(i, i);
    const cplx tr2 = 0.5 * (a + d);
    const cplx disc = std::sqrt(tr2 * tr2 - (a * d - b * c));
    const cplx l1 = tr2 + disc;
    const cplx l2 = tr2 - disc;
    return std::abs(l1 - d) < std::abs(l2 - d) ? l1 : l2;
}

} // namespace

SchurDecomposition complex_schur(const DenseMatrix& a) {
    if (!a.is_square()) throw dimension_error("complex_schur needs a square matrix");
    const std::size_t n = a.rows();
    if (n == 0) throw dimension_error("empty matrix");

    auto [h, u] = detail::hessenberg_reduce(a);
    const auto& kern = kernels::active();
    const double eps = std::numeric_limits<double>::epsilon();
    const double smlnum = std::numeric_limits<double>::min() / eps;
    const double anorm = std::max(h.frobenius_norm(), smlnum);
    const std::size_t sweep_cap = 30 * n;
    std::size_t sweeps = 0;

    std::size_t i = n - 1;
    std::size_t block_its = 0;
    while (true) {
        if (i == 0) break;

        // Deflation scan: top of the block ending at row i.
        std::size_t l = 0;
        for (std::size_t k = i; k >= 1; --k) {
            const double t = std::abs(h(k, k - 1));
            if (t == 0.0) {
                l = k;
                break;
            }
            double s = std::abs(h(k - 1, k - 1)) + std::abs(h(k, k));
            if (s == 0.0) s = anorm;
            if (t <= eps * s || t <= smlnum) {
                h(k, k - 1) = cplx{};
                l = k;
                break;
            }
        }
        if (l == i) {
            --i;
            block_its = 0;
            continue;
        }
        if (sweeps >= sweep_cap) {
            throw convergence_error("QR iteration exceeded the sweep cap", i);
        }
        ++sweeps;
        ++block_its;

        cplx sigma;
        if (block_its % 10 == 0) {
            double s = 0.75 * std::abs(h(i, i - 1));
            if (i >= 2) s += 0.75 * std::abs(h(i - 1, i - 2));
            sigma = h(i, i) + s;
        } else {
            sigma = wilkinson_shift(h, i);
        }

        // Single-shift bulge chase over the active block [l, i].
        cplx x = h(l, l) - sigma;
        cplx z = h(l + 1, l);
        for (std::size_t k = l; k < i; ++k) {
            if (k > l) {
                x = h(k, k - 1);
                z = h(k + 1, k - 1);
            }
            const auto giv = detail::make_givens(x, z);
            if (k > l) {
                h(k, k - 1) = giv.r;
                h(k + 1, k - 1) = cplx{};
            }
            // Rows k, k+1 from column k rightward.
            kern.rot_rowpair(n - k, &h(k, k), n, giv.c, giv.s);
            // Columns k, k+1 down to the bulge row.
            const std::size_t nrows = std::min(k + 2, i) + 1;
            kern.rot(nrows, h.col(k), h.col(k + 1), giv.c, std::conj(giv.s));
            kern.rot(n, u.col(k), u.col(k + 1), giv.c, std::conj(giv.s));
        }
    }

    SchurDecomposition out;
    out.lambda.resize(n);
    for (std::size_t d = 0; d < n; ++d) out.lambda[d] = h(d, d);
    out.tstrict = DenseMatrix(n, n);
    for (std::size_t j = 1; j < n; ++j)
        for (std::size_t r = 0; r < j; ++r) out.tstrict(r, j) = h(r, j);
    out.t = std::move(h);
    out.u = std::move(u);
    return out;
}

} // namespace kronsum
