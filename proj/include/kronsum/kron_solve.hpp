#pragma once

#include <array>
#include <cstddef>
#include <limits>
#include <optional>
#include <vector>

#include "kronsum/dense_matrix.hpp"
#include "kronsum/eig.hpp"
#include "kronsum/schur.hpp"
#include "kronsum/tensor3.hpp"

namespace kronsum {

struct SolveOptions {
    // Stop the Neumann series at the first term with
    // ||K_j||_F <= truncation_tol * ||K_0||_F.
    double truncation_tol = 1e-14;
    // Cap on series length; 0 resolves to the nilpotency bound
    // n1 + n2 (+ n3) - (#factors - 1).
    std::size_t max_terms = 0;
    // An eigenvalue-sum is treated as zero when |sum| <= singularity_tol
    // times the largest eigenvalue magnitude across the factors.
    double singularity_tol = 1e3 * std::numeric_limits<double>::epsilon();
    // When set, the series runs to the full resolved max_terms so the
    // per-term trace covers the requested length (plateau included).
    bool trace_full_series = false;
};

struct SolveReport {
    std::size_t terms_used = 0;
    std::vector<double> term_norms; // ||K_j||_F, one per term used
    double residual = 0.0;          // ||apply_kron_sum(X) - Y||_F / ||Y||_F
    double elapsed = 0.0;           // seconds
    // Conditioning indicators (reported, never enforced).
    double max_abs_cauchy = 0.0;
    double min_abs_eigsum = 0.0;
    double max_abs_eigsum = 0.0;
    // False when the term cap was hit while ||K_j|| still exceeded the
    // truncation threshold.
    bool series_converged = true;
    // Relative error against a reference field after each series
    // length; filled by the PDE layer when an exact solution is known.
    std::vector<double> error_trace;
};

struct Solvability {
    bool ok = true;
    // 1-based indices of the offending eigenvalue combination; third
    // entry 0 for two-factor systems.
    std::array<std::size_t, 3> witness = {0, 0, 0};
    double min_abs_sum = 0.0;
    double max_abs_sum = 0.0;
    double scale = 0.0; // largest eigenvalue magnitude across factors
};

// Array of reciprocals 1/(lambda^(1)_i + lambda^(2)_j [+ lambda^(3)_k]).
// Two-factor tensors have n3 = 1.
struct CauchyTensor {
    Tensor3 values;
    std::size_t factors = 0;
    double max_abs_entry = 0.0;
    double min_abs_sum = 0.0;
    double max_abs_sum = 0.0;

    DenseMatrix matrix() const; // 2-factor view as n1 x n2 matrix
};

// Scans all eigenvalue combinations of 2 or 3 spectra for sums within
// singularity_tol of zero (relative to the largest eigenvalue
// magnitude); reports the minimizing combination as witness.
Solvability solvability_check(const std::vector<std::vector<cplx>>& eigs,
                              double singularity_tol = SolveOptions{}.singularity_tol);

// Builds the reciprocal tensor; throws singularity_error (with the
// witness) when solvability fails.
CauchyTensor build_cauchy(const std::vector<std::vector<cplx>>& eigs,
                          const SolveOptions& opts = {});

// --- solvers ----------------------------------------------------------
//
// Factor A_m acts on mode m: the 2D system is
// (A2 (+) A1) vec(X) = vec(Y), i.e. A1*X + X*A2^T = Y with X n1 x n2;
// the 3D system is (A3 (+) A2 (+) A1) vec(X) = vec(Y).

// Eigendecomposition path for Hermitian factors. Non-Hermitian input
// fails the hermitian_eig precondition with a hint to the general
// solver.
std::pair<DenseMatrix, SolveReport> solve_normal_2d(const DenseMatrix& a1,
                                                    const DenseMatrix& a2,
                                                    const DenseMatrix& y,
                                                    const SolveOptions& opts = {});
std::pair<Tensor3, SolveReport> solve_normal_3d(const DenseMatrix& a1,
                                                const DenseMatrix& a2,
                                                const DenseMatrix& a3,
                                                const Tensor3& y,
                                                const SolveOptions& opts = {});

// Schur path for arbitrary square factors: triangularize, then sum the
// alternating Neumann series of the strictly-triangular part. The
// series terminates within n1 + n2 (+ n3) - (#factors - 1) terms
// because each strict-triangular application raises at least one index.
std::pair<DenseMatrix, SolveReport> solve_general_2d(const DenseMatrix& a1,
                                                     const DenseMatrix& a2,
                                                     const DenseMatrix& y,
                                                     const SolveOptions& opts = {});
std::pair<Tensor3, SolveReport> solve_general_3d(const DenseMatrix& a1,
                                                 const DenseMatrix& a2,
                                                 const DenseMatrix& a3,
                                                 const Tensor3& y,
                                                 const SolveOptions& opts = {});

// --- precomputed-factorization variants --------------------------------
//
// The PDE layer owns its factorizations (closed-form eigenpairs, shared
// Schur forms); these entry points run just the transform sandwich.
// `reference_hat` supplies a transformed-domain reference field for the
// per-term error trace.

std::pair<DenseMatrix, SolveReport> solve_with_eig_2d(const EigenDecomposition& e1,
                                                      const EigenDecomposition& e2,
                                                      const DenseMatrix& y,
                                                      const SolveOptions& opts = {});
std::pair<Tensor3, SolveReport> solve_with_eig_3d(const EigenDecomposition& e1,
                                                  const EigenDecomposition& e2,
                                                  const EigenDecomposition& e3,
                                                  const Tensor3& y,
                                                  const SolveOptions& opts = {});
std::pair<DenseMatrix, SolveReport> solve_with_schur_2d(const SchurDecomposition& s1,
                                                        const SchurDecomposition& s2,
                                                        const DenseMatrix& y,
                                                        const SolveOptions& opts = {},
                                                        const DenseMatrix* reference_hat = nullptr);
std::pair<Tensor3, SolveReport> solve_with_schur_3d(const SchurDecomposition& s1,
                                                    const SchurDecomposition& s2,
                                                    const SchurDecomposition& s3,
                                                    const Tensor3& y,
                                                    const SolveOptions& opts = {});

} // namespace kronsum
