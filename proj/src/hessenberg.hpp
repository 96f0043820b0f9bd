#pragma once

// Internal: complex Householder reduction to upper Hessenberg form,
// shared by the Hermitian eigensolver (where the result is tridiagonal
// up to roundoff) and the Schur decomposition.

#include "kronsum/dense_matrix.hpp"

namespace kronsum::detail {

struct Hessenberg {
    DenseMatrix h; // upper Hessenberg, exact zeros below the subdiagonal
    DenseMatrix q; // unitary accumulation, A = Q H Q*
};

Hessenberg hessenberg_reduce(const DenseMatrix& a);

// Givens rotation [c s; -conj(s) c] with c real mapping (f, g) to
// (r, 0).
struct Givens {
    double c;
    cplx s;
    cplx r;
};

Givens make_givens(cplx f, cplx g);

} // namespace kronsum::detail
