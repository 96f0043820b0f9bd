#pragma once

#include <vector>

#include "kronsum/dense_matrix.hpp"

namespace kronsum {

// Complex Schur form A = U T U* with U unitary and T upper triangular.
// lambda = diag(T); tstrict = T - diag(T) with exact zeros on and
// below the diagonal. Eigenvalue order is whatever the QR iteration
// produces.
struct SchurDecomposition {
    DenseMatrix u;
    DenseMatrix t;
    std::vector<cplx> lambda;
    DenseMatrix tstrict;
};

// Householder reduction to Hessenberg form, then single-shift QR with
// Wilkinson shifts. A subdiagonal entry deflates when its magnitude
// drops below eps_mach * (|neighbor above| + |neighbor below|); the
// sweep cap is 30*n, after which convergence_error reports the stuck
// subdiagonal. Real inputs are handled in complex arithmetic so T is
// genuinely triangular (no 2x2 blocks).
SchurDecomposition complex_schur(const DenseMatrix& a);

} // namespace kronsum
