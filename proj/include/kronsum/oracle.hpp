#pragma once

#include <cstddef>
#include <vector>

#include "kronsum/dense_matrix.hpp"
#include "kronsum/tensor3.hpp"

namespace kronsum::oracle {

// Packed LU factors with partial pivoting: P A = L U, unit lower
// triangle stored below the diagonal.
struct DenseLU {
    DenseMatrix lu;
    std::vector<std::size_t> pivots; // row swapped with k at step k
    double growth_factor = 0.0;      // max |U| / max |A|
};

DenseLU lu_factor(const DenseMatrix& a);
std::vector<cplx> lu_solve(const DenseLU& lu, const std::vector<cplx>& y);

// Materializes the full Kronecker-sum matrix (factors in mode order,
// as everywhere else) and solves it densely. Guarded at order 4096.
DenseMatrix oracle_solve_kron(const DenseMatrix& a1, const DenseMatrix& a2,
                              const DenseMatrix& y);
Tensor3 oracle_solve_kron(const DenseMatrix& a1, const DenseMatrix& a2,
                          const DenseMatrix& a3, const Tensor3& y);

} // namespace kronsum::oracle
