#pragma once

#include <cstddef>
#include <vector>

#include "kronsum/dense_matrix.hpp"
#include "kronsum/tensor3.hpp"

namespace kronsum {

// --- vec / unvec -----------------------------------------------------
//
// vec stacks columns (first index fastest). For tensors the linear
// position of 1-based element (i,j,k) is i + (j-1)*n1 + (k-1)*n1*n2;
// both containers already store entries in exactly this order.

std::vector<cplx> vec_matrix(const DenseMatrix& m);
DenseMatrix unvec_matrix(const std::vector<cplx>& v, std::size_t rows, std::size_t cols);

std::vector<cplx> vec_tensor(const Tensor3& t);
Tensor3 unvec_tensor(const std::vector<cplx>& v,
                     std::size_t n1, std::size_t n2, std::size_t n3);

// --- products --------------------------------------------------------

DenseMatrix matmul(const DenseMatrix& a, const DenseMatrix& b);

// Block matrix of all pairwise entry products: (rA*rB) x (cA*cB).
DenseMatrix kronecker_product(const DenseMatrix& a, const DenseMatrix& b);

// A (+) B = A (x) I_m + I_n (x) B for square A, B. The left operand
// varies on the slow index. Used by the oracle and tests only; the
// solvers never materialize these.
DenseMatrix kronecker_sum2(const DenseMatrix& a, const DenseMatrix& b);
DenseMatrix kronecker_sum3(const DenseMatrix& a, const DenseMatrix& b, const DenseMatrix& c);

// Elementwise products (shapes must match).
DenseMatrix hadamard(const DenseMatrix& a, const DenseMatrix& b);
Tensor3 hadamard(const Tensor3& a, const Tensor3& b);

// (u o v)(i,j) = u_i * v_j.
DenseMatrix outer_product(const std::vector<cplx>& u, const std::vector<cplx>& v);

// Mode-m product T x_m V: contracts V's columns against the m-th
// tensor index, which then takes size V.rows(). mode is 1, 2 or 3.
Tensor3 mode_product(const Tensor3& t, const DenseMatrix& v, int mode);

// Sum_m X x_m A_m without materializing the Kronecker-sum matrix.
// vec of the result equals (A3 (+) A2 (+) A1) * vec(X); the factor for
// mode m has order dims[m]. Matrix form: A1*X + X*A2^T.
DenseMatrix apply_kron_sum(const DenseMatrix& a1, const DenseMatrix& a2,
                           const DenseMatrix& x);
Tensor3 apply_kron_sum(const DenseMatrix& a1, const DenseMatrix& a2,
                       const DenseMatrix& a3, const Tensor3& x);

// --- structured products used by the Neumann recursion ---------------
//
// Both exploit strict upper-triangularity of the factor; results equal
// the plain products with the full (zero-padded) matrices.

// C = T * K with T strictly upper triangular (n x n), K n x m.
DenseMatrix strict_upper_times(const DenseMatrix& t, const DenseMatrix& k);
// C = K * T^T with T strictly upper triangular (m x m), K n x m.
DenseMatrix times_strict_upper_t(const DenseMatrix& k, const DenseMatrix& t);

} // namespace kronsum
