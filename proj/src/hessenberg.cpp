#include "hessenberg.hpp"

#include <cmath>
#include <vector>

#include "kronsum/kernels.hpp"

namespace kronsum::detail {
namespace {

// Householder reflector for [alpha; x]: returns tau and beta with
// (I - tau v v*) [alpha; x] = [beta; 0], v = [1; x/(alpha-beta)].
// x is rescaled in place into the reflector tail.
cplx make_householder(cplx& alpha, cplx* x, std::size_t m, double& beta_out) {
    const auto& kern = kernels::active();
    const double xnorm = std::sqrt(kern.norm_sq(m, x));
    if (xnorm == 0.0 && alpha.imag() == 0.0) {
        beta_out = alpha.real();
        return cplx{};
    }
    double beta = std::hypot(std::abs(alpha), xnorm);
    if (alpha.real() > 0.0) beta = -beta;
    const cplx tau{(beta - alpha.real()) / beta, -alpha.imag() / beta};
    const cplx scale = 1.0 / (alpha - beta);
    for (std::size_t i = 0; i < m; ++i) x[i] *= scale;
    beta_out = beta;
    return tau;
}

} // namespace

Givens make_givens(cplx f, cplx g) {
    const double af = std::abs(f);
    const double ag = std::abs(g);
    if (ag == 0.0) return {1.0, cplx{}, f};
    if (af == 0.0) return {0.0, std::conj(g) / ag, ag};
    const double d = std::hypot(af, ag);
    const cplx phase = f / af;
    return {af / d, phase * std::conj(g) / d, phase * d};
}

Hessenberg hessenberg_reduce(const DenseMatrix& a) {
    if (!a.is_square()) throw dimension_error("hessenberg reduction needs a square matrix");
    const std::size_t n = a.rows();
    if (n == 0) throw dimension_error("empty matrix");

    const auto& kern = kernels::active();
    DenseMatrix h = a;
    std::vector<cplx> taus(n > 2 ? n - 2 : 0);
    std::vector<cplx> w(n);

    for (std::size_t i = 0; i + 2 < n; ++i) {
        const std::size_t m = n - i - 1; // reflector length
        cplx alpha = h(i + 1, i);
        double beta = 0.0;
        const cplx tau = make_householder(alpha, &h(i + 2, i), m - 1, beta);
        taus[i] = tau;
        h(i + 1, i) = beta;
        if (tau == cplx{}) continue;

        // v = [1; h(i+2.., i)], rows i+1..n.
        std::vector<cplx> v(m);
        v[0] = 1.0;
        for (std::size_t r = 1; r < m; ++r) v[r] = h(i + 1 + r, i);

        // Right: A <- A (I - tau v v*), all rows, columns i+1..n.
        std::fill(w.begin(), w.end(), cplx{});
        for (std::size_t j = 0; j < m; ++j) {
            kern.axpy(n, v[j], &h(0, i + 1 + j), w.data());
        }
        for (std::size_t j = 0; j < m; ++j) {
            kern.axpy(n, -tau * std::conj(v[j]), w.data(), &h(0, i + 1 + j));
        }

        // Left: A <- (I - conj(tau) v v*) A, rows i+1..n, columns i+1..n.
        const cplx ctau = std::conj(tau);
        for (std::size_t j = i + 1; j < n; ++j) {
            const cplx s = kern.dotc(m, v.data(), &h(i + 1, j));
            kern.axpy(m, -ctau * s, v.data(), &h(i + 1, j));
        }
    }

    // Accumulate Q by applying reflectors to the identity in reverse.
    DenseMatrix q = DenseMatrix::identity(n);
    for (std::size_t ii = n > 2 ? n - 2 : 0; ii-- > 0;) {
        const cplx tau = taus[ii];
        if (tau == cplx{}) continue;
        const std::size_t m = n - ii - 1;
        std::vector<cplx> v(m);
        v[0] = 1.0;
        for (std::size_t r = 1; r < m; ++r) v[r] = h(ii + 1 + r, ii);
        for (std::size_t j = ii + 1; j < n; ++j) {
            const cplx s = kern.dotc(m, v.data(), &q(ii + 1, j));
            kern.axpy(m, -tau * s, v.data(), &q(ii + 1, j));
        }
    }

    // Clear the reflector storage below the subdiagonal.
    for (std::size_t j = 0; j + 2 < n; ++j) {
        for (std::size_t i = j + 2; i < n; ++i) h(i, j) = cplx{};
    }
    return {std::move(h), std::move(q)};
}

} // namespace kronsum::detail
