#pragma once

#include <complex>
#include <cstddef>
#include <string>

namespace kronsum::kernels {

using cplx = std::complex<double>;

// Hot inner loops of the library, in scalar reference form and (on
// x86-64 with AVX2+FMA) vectorized form. All matrices are column-major
// with a leading dimension >= row count. The two variants are
// equivalence-tested against each other; the scalar table is the
// reference semantics.
struct KernelTable {
    const char* name;

    // C (m x n, ldc) += A (m x k, lda) * B (k x n, ldb)
    void (*gemm_acc)(std::size_t m, std::size_t n, std::size_t k,
                     const cplx* a, std::size_t lda,
                     const cplx* b, std::size_t ldb,
                     cplx* c, std::size_t ldc);

    // out[i] = a[i] * b[i]
    void (*hadamard)(std::size_t n, const cplx* a, const cplx* b, cplx* out);

    // y[i] += alpha * x[i]
    void (*axpy)(std::size_t n, cplx alpha, const cplx* x, cplx* y);

    // sum |x[i]|^2
    double (*norm_sq)(std::size_t n, const cplx* x);

    // sum conj(x[i]) * y[i]
    cplx (*dotc)(std::size_t n, const cplx* x, const cplx* y);

    // Plane rotation on two contiguous vectors, c real:
    //   x[i] <- c*x[i] + s*y[i]
    //   y[i] <- -conj(s)*x_old[i] + c*y[i]
    void (*rot)(std::size_t n, cplx* x, cplx* y, double c, cplx s);

    // Same rotation on two *adjacent rows* of a column-major matrix:
    // x[i] = base[i*ld], y[i] = base[i*ld + 1] for i in [0, n).
    void (*rot_rowpair)(std::size_t n, cplx* base, std::size_t ld, double c, cplx s);
};

enum class Backend { scalar, avx2 };

const KernelTable& scalar_table();

// Null when the binary was built without AVX2 support or the CPU lacks
// AVX2/FMA.
const KernelTable* avx2_table();

bool avx2_available();

// Active table selection. Defaults to the best available backend;
// KRONSUM_BACKEND=scalar|avx2 in the environment overrides. Throws
// precondition_error if the requested backend is unavailable.
const KernelTable& active();
Backend active_backend();
void set_backend(Backend backend);

std::string backend_name(Backend backend);

} // namespace kronsum::kernels
