#pragma once

#include <cstddef>
#include <vector>

#include "kronsum/dense_matrix.hpp"

namespace kronsum {

// Unitary eigendecomposition A = U diag(lambda) U* of a Hermitian
// matrix; eigenvalues real and ascending.
struct EigenDecomposition {
    DenseMatrix u;
    std::vector<double> lambda;
};

// Householder reduction to real symmetric tridiagonal form followed by
// implicit-shift QL iteration with accumulated eigenvectors.
//
// Preconditions: A square and Hermitian to 1e-12 relative in Frobenius
// norm. Postconditions: ||U*U - I||_F <= 1e-12 n and
// ||A - U diag(lambda) U*||_F <= 1e-11 ||A||_F.
EigenDecomposition hermitian_eig(const DenseMatrix& a);

// Eigendecomposition of the N x N second-difference matrix
// tridiag(-1, 2, -1) from its closed form:
//   lambda_i = 4 sin^2(i pi / (2(N+1))),
//   U(k,i)   = sqrt(2/(N+1)) sin(k i pi / (N+1)),
// evaluated directly on the index grid (no iterative solve).
EigenDecomposition closed_form_laplacian_eig(std::size_t n);

} // namespace kronsum
