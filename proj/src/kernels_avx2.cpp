#include "kronsum/kernels.hpp"

#include <algorithm>

// AVX2+FMA variants. Compiled with -mavx2 -mfma in this TU only; the
// dispatcher guarantees these run only on CPUs reporting both.
//
// A __m256d holds two interleaved complex doubles. Complex products
// use the usual two-step form: p = a*br, then addsub(p, swap(a)*bi),
// where swap exchanges re/im within each pair.

#if defined(__x86_64__) || defined(_M_X64)
#include <immintrin.h>

namespace kronsum::kernels {
namespace {

using std::size_t;

inline __m256d cswap(__m256d v) { return _mm256_permute_pd(v, 0b0101); }

inline const double* dp(const cplx* p) { return reinterpret_cast<const double*>(p); }
inline double* dp(cplx* p) { return reinterpret_cast<double*>(p); }

// y[0..n) += alpha * x[0..n), vector body shared by axpy and the gemm
// edge paths.
inline void axpy_body(size_t n, cplx alpha, const cplx* x, cplx* y) {
    const __m256d ar = _mm256_set1_pd(alpha.real());
    const __m256d ai = _mm256_set1_pd(alpha.imag());
    size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        const __m256d xv = _mm256_loadu_pd(dp(x + i));
        const __m256d yv = _mm256_loadu_pd(dp(y + i));
        const __m256d t = _mm256_fmadd_pd(xv, ar, yv);
        const __m256d res = _mm256_addsub_pd(t, _mm256_mul_pd(cswap(xv), ai));
        _mm256_storeu_pd(dp(y + i), res);
    }
    for (; i < n; ++i) y[i] += alpha * x[i];
}

void axpy_avx2(size_t n, cplx alpha, const cplx* x, cplx* y) {
    axpy_body(n, alpha, x, y);
}

void hadamard_avx2(size_t n, const cplx* a, const cplx* b, cplx* out) {
    size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        const __m256d av = _mm256_loadu_pd(dp(a + i));
        const __m256d bv = _mm256_loadu_pd(dp(b + i));
        const __m256d bre = _mm256_movedup_pd(bv);
        const __m256d bim = _mm256_permute_pd(bv, 0b1111);
        const __m256d res =
            _mm256_addsub_pd(_mm256_mul_pd(av, bre), _mm256_mul_pd(cswap(av), bim));
        _mm256_storeu_pd(dp(out + i), res);
    }
    for (; i < n; ++i) out[i] = a[i] * b[i];
}

double norm_sq_avx2(size_t n, const cplx* x) {
    __m256d acc0 = _mm256_setzero_pd();
    __m256d acc1 = _mm256_setzero_pd();
    size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256d v0 = _mm256_loadu_pd(dp(x + i));
        const __m256d v1 = _mm256_loadu_pd(dp(x + i + 2));
        acc0 = _mm256_fmadd_pd(v0, v0, acc0);
        acc1 = _mm256_fmadd_pd(v1, v1, acc1);
    }
    const __m256d acc = _mm256_add_pd(acc0, acc1);
    alignas(32) double lanes[4];
    _mm256_store_pd(lanes, acc);
    double s = lanes[0] + lanes[1] + lanes[2] + lanes[3];
    for (; i < n; ++i) s += x[i].real() * x[i].real() + x[i].imag() * x[i].imag();
    return s;
}

cplx dotc_avx2(size_t n, const cplx* x, const cplx* y) {
    __m256d acc_re = _mm256_setzero_pd();
    __m256d acc_im = _mm256_setzero_pd();
    size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        const __m256d xv = _mm256_loadu_pd(dp(x + i));
        const __m256d yv = _mm256_loadu_pd(dp(y + i));
        acc_re = _mm256_fmadd_pd(xv, yv, acc_re);          // (xr*yr, xi*yi)
        acc_im = _mm256_fmadd_pd(cswap(xv), yv, acc_im);   // (xi*yr, xr*yi)
    }
    alignas(32) double re[4], im[4];
    _mm256_store_pd(re, acc_re);
    _mm256_store_pd(im, acc_im);
    cplx s{re[0] + re[1] + re[2] + re[3],
           (im[1] - im[0]) + (im[3] - im[2])};
    for (; i < n; ++i) s += std::conj(x[i]) * y[i];
    return s;
}

void rot_avx2(size_t n, cplx* x, cplx* y, double c, cplx s) {
    const __m256d cv = _mm256_set1_pd(c);
    const __m256d sr = _mm256_set1_pd(s.real());
    const __m256d si = _mm256_set1_pd(s.imag());
    const __m256d nsi = _mm256_set1_pd(-s.imag());
    size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        const __m256d xv = _mm256_loadu_pd(dp(x + i));
        const __m256d yv = _mm256_loadu_pd(dp(y + i));
        // s*y
        const __m256d sy = _mm256_addsub_pd(_mm256_mul_pd(yv, sr),
                                            _mm256_mul_pd(cswap(yv), si));
        // conj(s)*x = addsub(x*sr, swap(x)*(-si))
        const __m256d csx = _mm256_addsub_pd(_mm256_mul_pd(xv, sr),
                                             _mm256_mul_pd(cswap(xv), nsi));
        _mm256_storeu_pd(dp(x + i), _mm256_fmadd_pd(xv, cv, sy));
        _mm256_storeu_pd(dp(y + i), _mm256_sub_pd(_mm256_mul_pd(yv, cv), csx));
    }
    const cplx sc = std::conj(s);
    for (; i < n; ++i) {
        const cplx xi = x[i];
        x[i] = c * xi + s * y[i];
        y[i] = -sc * xi + c * y[i];
    }
}

void rot_rowpair_avx2(size_t n, cplx* base, size_t ld, double c, cplx s) {
    // Each column holds the (row k, row k+1) pair contiguously: one
    // vector (x.re, x.im, y.re, y.im) per column.
    const __m256d cv = _mm256_set1_pd(c);
    const double srd = s.real();
    const double sid = s.imag();
    // Per-half complex scalars: s for the top row, -conj(s) for the bottom.
    const __m256d pr = _mm256_set_pd(-srd, -srd, srd, srd);
    const __m256d pi = _mm256_set1_pd(sid);
    for (size_t j = 0; j < n; ++j) {
        double* p = dp(base + j * ld);
        const __m256d v = _mm256_loadu_pd(p);
        const __m256d w = _mm256_permute2f128_pd(v, v, 0x01); // (y, x)
        const __m256d prod =
            _mm256_addsub_pd(_mm256_mul_pd(w, pr), _mm256_mul_pd(cswap(w), pi));
        _mm256_storeu_pd(p, _mm256_fmadd_pd(v, cv, prod));
    }
}

// 4x4 complex microkernel: accumulates C(i0:i0+4, j0:j0+4) over the
// full k range in registers.
inline void gemm_micro_4x4(size_t k,
                           const cplx* a, size_t lda,
                           const cplx* b, size_t ldb,
                           cplx* c, size_t ldc) {
    __m256d acc[4][2];
    for (int j = 0; j < 4; ++j) {
        acc[j][0] = _mm256_loadu_pd(dp(c + j * ldc));
        acc[j][1] = _mm256_loadu_pd(dp(c + j * ldc + 2));
    }
    for (size_t l = 0; l < k; ++l) {
        const cplx* acol = a + l * lda;
        const __m256d a0 = _mm256_loadu_pd(dp(acol));
        const __m256d a1 = _mm256_loadu_pd(dp(acol + 2));
        const __m256d a0s = cswap(a0);
        const __m256d a1s = cswap(a1);
        for (int j = 0; j < 4; ++j) {
            const double* blj = dp(b + l + j * ldb);
            const __m256d br = _mm256_broadcast_sd(blj);
            const __m256d bi = _mm256_broadcast_sd(blj + 1);
            acc[j][0] = _mm256_fmadd_pd(a0, br, acc[j][0]);
            acc[j][0] = _mm256_addsub_pd(acc[j][0], _mm256_mul_pd(a0s, bi));
            acc[j][1] = _mm256_fmadd_pd(a1, br, acc[j][1]);
            acc[j][1] = _mm256_addsub_pd(acc[j][1], _mm256_mul_pd(a1s, bi));
        }
    }
    for (int j = 0; j < 4; ++j) {
        _mm256_storeu_pd(dp(c + j * ldc), acc[j][0]);
        _mm256_storeu_pd(dp(c + j * ldc + 2), acc[j][1]);
    }
}

void gemm_acc_avx2(size_t m, size_t n, size_t k,
                   const cplx* a, size_t lda,
                   const cplx* b, size_t ldb,
                   cplx* c, size_t ldc) {
    const size_t m4 = m - m % 4;
    const size_t n4 = n - n % 4;
    // Blocking: the B panel (kc x nc) sits in L2 across the row sweep,
    // each A slab (4 x kc) fits L1 and is reused across the j loop.
    constexpr size_t nc = 64;
    constexpr size_t kc = 256;
    for (size_t jb = 0; jb < n4; jb += nc) {
        const size_t jhi = std::min(jb + nc, n4);
        for (size_t kb = 0; kb < k; kb += kc) {
            const size_t klen = std::min(kc, k - kb);
            for (size_t i = 0; i < m4; i += 4) {
                for (size_t j = jb; j < jhi; j += 4) {
                    gemm_micro_4x4(klen, a + i + kb * lda, lda, b + kb + j * ldb, ldb,
                                   c + i + j * ldc, ldc);
                }
            }
        }
    }
    // Remaining columns: vector axpy per (l, j).
    for (size_t j = n4; j < n; ++j) {
        cplx* ccol = c + j * ldc;
        for (size_t l = 0; l < k; ++l) {
            const cplx blj = b[l + j * ldb];
            if (blj != cplx{}) axpy_body(m, blj, a + l * lda, ccol);
        }
    }
    // Remaining rows under the full columns.
    if (m4 < m) {
        for (size_t j = 0; j < n4; ++j) {
            cplx* ccol = c + j * ldc;
            for (size_t l = 0; l < k; ++l) {
                const cplx blj = b[l + j * ldb];
                if (blj == cplx{}) continue;
                const cplx* acol = a + l * lda;
                for (size_t i = m4; i < m; ++i) ccol[i] += acol[i] * blj;
            }
        }
    }
}

} // namespace

const KernelTable* avx2_table() {
    static const KernelTable table{
        "avx2",        gemm_acc_avx2, hadamard_avx2,    axpy_avx2,
        norm_sq_avx2,  dotc_avx2,     rot_avx2,         rot_rowpair_avx2,
    };
    return &table;
}

} // namespace kronsum::kernels

#else

namespace kronsum::kernels {
const KernelTable* avx2_table() { return nullptr; }
} // namespace kronsum::kernels

#endif
