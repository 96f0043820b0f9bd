#include "kronsum/tensor_ops.hpp"

#include <algorithm>

#include "kronsum/kernels.hpp"

namespace kronsum {
namespace {

void require(bool ok, const char* msg) {
    if (!ok) throw dimension_error(msg);
}

} // namespace

std::vector<cplx> vec_matrix(const DenseMatrix& m) { return m.entries(); }

DenseMatrix unvec_matrix(const std::vector<cplx>& v, std::size_t rows, std::size_t cols) {
    require(v.size() == rows * cols, "unvec length does not match rows*cols");
    return DenseMatrix(rows, cols, v);
}

std::vector<cplx> vec_tensor(const Tensor3& t) { return t.entries(); }

Tensor3 unvec_tensor(const std::vector<cplx>& v,
                     std::size_t n1, std::size_t n2, std::size_t n3) {
    require(v.size() == n1 * n2 * n3, "unvec length does not match n1*n2*n3");
    return Tensor3(n1, n2, n3, v);
}

DenseMatrix matmul(const DenseMatrix& a, const DenseMatrix& b) {
    require(a.cols() == b.rows(), "inner dimensions differ in matmul");
    DenseMatrix c(a.rows(), b.cols());
    kernels::active().gemm_acc(a.rows(), b.cols(), a.cols(),
                               a.data(), a.rows(), b.data(), b.rows(),
                               c.data(), c.rows());
    return c;
}

DenseMatrix kronecker_product(const DenseMatrix& a, const DenseMatrix& b) {
    DenseMatrix r(a.rows() * b.rows(), a.cols() * b.cols());
    for (std::size_t ja = 0; ja < a.cols(); ++ja)
        for (std::size_t ia = 0; ia < a.rows(); ++ia) {
            const cplx aij = a(ia, ja);
            for (std::size_t jb = 0; jb < b.cols(); ++jb)
                for (std::size_t ib = 0; ib < b.rows(); ++ib) {
                    r(ia * b.rows() + ib, ja * b.cols() + jb) = aij * b(ib, jb);
                }
        }
    return r;
}

DenseMatrix kronecker_sum2(const DenseMatrix& a, const DenseMatrix& b) {
    require(a.is_square() && b.is_square(), "kronecker sum operands must be square");
    const std::size_t n = a.rows();
    const std::size_t m = b.rows();
    DenseMatrix r = kronecker_product(a, DenseMatrix::identity(m));
    const DenseMatrix ib = kronecker_product(DenseMatrix::identity(n), b);
    r += ib;
    return r;
}

DenseMatrix kronecker_sum3(const DenseMatrix& a, const DenseMatrix& b, const DenseMatrix& c) {
    require(a.is_square() && b.is_square() && c.is_square(),
            "kronecker sum operands must be square");
    return kronecker_sum2(a, kronecker_sum2(b, c));
}

DenseMatrix hadamard(const DenseMatrix& a, const DenseMatrix& b) {
    require(a.rows() == b.rows() && a.cols() == b.cols(), "hadamard shapes differ");
    DenseMatrix r(a.rows(), a.cols());
    kernels::active().hadamard(a.size(), a.data(), b.data(), r.data());
    return r;
}

Tensor3 hadamard(const Tensor3& a, const Tensor3& b) {
    require(a.dims() == b.dims(), "hadamard shapes differ");
    Tensor3 r(a.dim(0), a.dim(1), a.dim(2));
    kernels::active().hadamard(a.size(), a.data(), b.data(), r.data());
    return r;
}

DenseMatrix outer_product(const std::vector<cplx>& u, const std::vector<cplx>& v) {
    DenseMatrix r(u.size(), v.size());
    for (std::size_t j = 0; j < v.size(); ++j)
        for (std::size_t i = 0; i < u.size(); ++i) r(i, j) = u[i] * v[j];
    return r;
}

Tensor3 mode_product(const Tensor3& t, const DenseMatrix& v, int mode) {
    require(mode >= 1 && mode <= 3, "mode must be 1, 2 or 3");
    const std::size_t n1 = t.dim(0), n2 = t.dim(1), n3 = t.dim(2);
    require(v.cols() == t.dim(static_cast<std::size_t>(mode - 1)),
            "matrix columns do not match the contracted tensor dimension");
    const auto& kern = kernels::active();
    const std::size_t r = v.rows();

    if (mode == 1) {
        // Mode-1 unfolding is the storage itself: R_(1) = V * T_(1).
        Tensor3 out(r, n2, n3);
        kern.gemm_acc(r, n2 * n3, n1, v.data(), v.rows(), t.data(), n1,
                      out.data(), r);
        return out;
    }
    const DenseMatrix vt = v.transpose();
    if (mode == 2) {
        // Per k-slice: R(:,:,k) = T(:,:,k) * V^T.
        Tensor3 out(n1, r, n3);
        for (std::size_t k = 0; k < n3; ++k) {
            kern.gemm_acc(n1, r, n2, t.data() + k * n1 * n2, n1,
                          vt.data(), vt.rows(), out.data() + k * n1 * r, n1);
        }
        return out;
    }
    // Mode 3: R_(12) = T_(12) * V^T over the combined (i,j) index.
    Tensor3 out(n1, n2, r);
    kern.gemm_acc(n1 * n2, r, n3, t.data(), n1 * n2, vt.data(), vt.rows(),
                  out.data(), n1 * n2);
    return out;
}

DenseMatrix apply_kron_sum(const DenseMatrix& a1, const DenseMatrix& a2,
                           const DenseMatrix& x) {
    require(a1.is_square() && a2.is_square(), "factors must be square");
    require(a1.rows() == x.rows() && a2.rows() == x.cols(),
            "factor orders do not match the operand shape");
    const auto& kern = kernels::active();
    DenseMatrix r(x.rows(), x.cols());
    kern.gemm_acc(x.rows(), x.cols(), x.rows(), a1.data(), a1.rows(),
                  x.data(), x.rows(), r.data(), r.rows());
    const DenseMatrix a2t = a2.transpose();
    kern.gemm_acc(x.rows(), x.cols(), x.cols(), x.data(), x.rows(),
                  a2t.data(), a2t.rows(), r.data(), r.rows());
    return r;
}

Tensor3 apply_kron_sum(const DenseMatrix& a1, const DenseMatrix& a2,
                       const DenseMatrix& a3, const Tensor3& x) {
    require(a1.is_square() && a2.is_square() && a3.is_square(), "factors must be square");
    require(a1.rows() == x.dim(0) && a2.rows() == x.dim(1) && a3.rows() == x.dim(2),
            "factor orders do not match the operand shape");
    Tensor3 r = mode_product(x, a1, 1);
    r += mode_product(x, a2, 2);
    r += mode_product(x, a3, 3);
    return r;
}

DenseMatrix strict_upper_times(const DenseMatrix& t, const DenseMatrix& k) {
    require(t.is_square() && t.rows() == k.rows(), "shape mismatch in triangular product");
    const auto& kern = kernels::active();
    const std::size_t n = t.rows(), m = k.cols();
    DenseMatrix c(n, m);
    // Column l of T contributes to rows [0, l): panel over l so each
    // gemm call covers rows [0, l1) with the in-panel zeros included.
    constexpr std::size_t lb = 64;
    for (std::size_t l0 = 1; l0 < n; l0 += lb) {
        const std::size_t l1 = std::min(l0 + lb, n);
        kern.gemm_acc(l1, m, l1 - l0, t.data() + l0 * n, n,
                      k.data() + l0, n, c.data(), n);
    }
    return c;
}

DenseMatrix times_strict_upper_t(const DenseMatrix& k, const DenseMatrix& t) {
    require(t.is_square() && t.rows() == k.cols(), "shape mismatch in triangular product");
    const auto& kern = kernels::active();
    const std::size_t n = k.rows(), m = k.cols();
    DenseMatrix c(n, m);
    // (K T^T)(:,j) = sum over l > j of K(:,l) T(j,l): panel over j with
    // a transposed slab of T built per panel.
    constexpr std::size_t jb = 64;
    for (std::size_t j0 = 0; j0 + 1 < m; j0 += jb) {
        const std::size_t j1 = std::min(j0 + jb, m);
        const std::size_t kk = m - (j0 + 1); // contributing columns l in (j0, m)
        DenseMatrix slab(kk, j1 - j0);
        for (std::size_t j = j0; j < j1; ++j)
            for (std::size_t l = std::max(j + 1, j0 + 1); l < m; ++l) {
                slab(l - (j0 + 1), j - j0) = t(j, l);
            }
        kern.gemm_acc(n, j1 - j0, kk, k.data() + (j0 + 1) * n, n,
                      slab.data(), slab.rows(), c.data() + j0 * n, n);
    }
    return c;
}

} // namespace kronsum
