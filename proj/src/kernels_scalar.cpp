#include "kronsum/kernels.hpp"

// Reference kernels. Plain loops, no intrinsics; these define the
// semantics the vectorized variants are tested against.

namespace kronsum::kernels {
namespace {

// Column-major accumulate C += A*B. The j-block keeps a handful of C
// columns hot while streaming A once per block.
void gemm_acc_scalar(std::size_t m, std::size_t n, std::size_t k,
                     const cplx* a, std::size_t lda,
                     const cplx* b, std::size_t ldb,
                     cplx* c, std::size_t ldc) {
    constexpr std::size_t jb = 4;
    for (std::size_t j0 = 0; j0 < n; j0 += jb) {
        const std::size_t j1 = std::min(j0 + jb, n);
        for (std::size_t l = 0; l < k; ++l) {
            const cplx* acol = a + l * lda;
            for (std::size_t j = j0; j < j1; ++j) {
                const cplx blj = b[l + j * ldb];
                if (blj == cplx{}) continue;
                cplx* ccol = c + j * ldc;
                for (std::size_t i = 0; i < m; ++i) ccol[i] += acol[i] * blj;
            }
        }
    }
}

void hadamard_scalar(std::size_t n, const cplx* a, const cplx* b, cplx* out) {
    for (std::size_t i = 0; i < n; ++i) out[i] = a[i] * b[i];
}

void axpy_scalar(std::size_t n, cplx alpha, const cplx* x, cplx* y) {
    for (std::size_t i = 0; i < n; ++i) y[i] += alpha * x[i];
}

double norm_sq_scalar(std::size_t n, const cplx* x) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        s += x[i].real() * x[i].real() + x[i].imag() * x[i].imag();
    }
    return s;
}

cplx dotc_scalar(std::size_t n, const cplx* x, const cplx* y) {
    cplx s{};
    for (std::size_t i = 0; i < n; ++i) s += std::conj(x[i]) * y[i];
    return s;
}

void rot_scalar(std::size_t n, cplx* x, cplx* y, double c, cplx s) {
    const cplx sc = std::conj(s);
    for (std::size_t i = 0; i < n; ++i) {
        const cplx xi = x[i];
        x[i] = c * xi + s * y[i];
        y[i] = -sc * xi + c * y[i];
    }
}

void rot_rowpair_scalar(std::size_t n, cplx* base, std::size_t ld, double c, cplx s) {
    const cplx sc = std::conj(s);
    for (std::size_t j = 0; j < n; ++j) {
        cplx* p = base + j * ld;
        const cplx xj = p[0];
        p[0] = c * xj + s * p[1];
        p[1] = -sc * xj + c * p[1];
    }
}

} // namespace

const KernelTable& scalar_table() {
    static const KernelTable table{
        "scalar",         gemm_acc_scalar, hadamard_scalar,    axpy_scalar,
        norm_sq_scalar,   dotc_scalar,     rot_scalar,         rot_rowpair_scalar,
    };
    return table;
}

} // namespace kronsum::kernels
