#include "kronsum/kron_solve.hpp"

#include <chrono>
#include <cmath>
#include <utility>

#include "kronsum/kernels.hpp"
#include "kronsum/tensor_ops.hpp"

namespace kronsum {
namespace {

using clock_type = std::chrono::steady_clock;

double seconds_since(clock_type::time_point t0) {
    return std::chrono::duration<double>(clock_type::now() - t0).count();
}

double rel_residual_norm(double diff, double ref) { return ref > 0.0 ? diff / ref : diff; }

std::vector<cplx> to_complex(const std::vector<double>& v) {
    return std::vector<cplx>(v.begin(), v.end());
}

struct CauchyScan {
    double scale = 0.0;
    double min_abs = 0.0;
    double max_abs = 0.0;
    std::array<std::size_t, 3> witness = {0, 0, 0};
};

// Shared scan over all eigenvalue-sum combinations; fills entries when
// `values` is non-null.
CauchyScan scan_sums(const std::vector<std::vector<cplx>>& eigs, Tensor3* values) {
    const std::size_t nf = eigs.size();
    if (nf != 2 && nf != 3) {
        throw dimension_error("expected 2 or 3 eigenvalue lists");
    }
    CauchyScan out;
    for (const auto& list : eigs) {
        if (list.empty()) throw dimension_error("empty eigenvalue list");
        for (const cplx& l : list) out.scale = std::max(out.scale, std::abs(l));
    }
    const std::size_t n1 = eigs[0].size();
    const std::size_t n2 = eigs[1].size();
    const std::size_t n3 = nf == 3 ? eigs[2].size() : 1;
    out.min_abs = std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k < n3; ++k) {
        const cplx lk = nf == 3 ? eigs[2][k] : cplx{};
        for (std::size_t j = 0; j < n2; ++j) {
            const cplx ljk = eigs[1][j] + lk;
            for (std::size_t i = 0; i < n1; ++i) {
                const cplx sum = eigs[0][i] + ljk;
                const double mag = std::abs(sum);
                if (mag < out.min_abs) {
                    out.min_abs = mag;
                    out.witness = {i + 1, j + 1, nf == 3 ? k + 1 : 0};
                }
                if (mag > out.max_abs) out.max_abs = mag;
                if (values != nullptr) (*values)(i, j, k) = 1.0 / sum;
            }
        }
    }
    return out;
}

DenseMatrix cauchy_matrix_from(const Tensor3& t) {
    DenseMatrix m(t.dim(0), t.dim(1));
    std::copy(t.data(), t.data() + t.size(), m.data());
    return m;
}

// Alternating Neumann-series state shared by the 2D and 3D general
// solvers; Step produces K_{j+1} from K_j.
template <typename Field, typename Step>
void run_series(Field& sum, Field& k, const SolveOptions& opts,
                std::size_t nilpotency_bound, SolveReport& rep, Step step) {
    const double k0 = k.frobenius_norm();
    rep.term_norms.push_back(k0);
    rep.terms_used = 1;
    rep.series_converged = true;
    if (k0 == 0.0) return;

    const std::size_t cap = opts.max_terms > 0 ? opts.max_terms : nilpotency_bound;
    double sign = -1.0;
    double last = k0;
    for (std::size_t j = 1; j < cap; ++j) {
        k = step(k);
        last = k.frobenius_norm();
        rep.term_norms.push_back(last);
        ++rep.terms_used;
        kernels::active().axpy(sum.size(), sign, k.data(), sum.data());
        sign = -sign;
        if (last == 0.0) return;
        if (!opts.trace_full_series && last <= opts.truncation_tol * k0) return;
    }
    // A full run to the nilpotency bound sums every nonzero term, so
    // the warning applies only to a shorter user-imposed cap.
    rep.series_converged =
        rep.terms_used >= nilpotency_bound || last <= opts.truncation_tol * k0;
}

} // namespace

DenseMatrix CauchyTensor::matrix() const {
    if (factors != 2) throw dimension_error("matrix view is only defined for 2 factors");
    return cauchy_matrix_from(values);
}

Solvability solvability_check(const std::vector<std::vector<cplx>>& eigs,
                              double singularity_tol) {
    const CauchyScan scan = scan_sums(eigs, nullptr);
    Solvability out;
    out.ok = scan.min_abs > singularity_tol * scan.scale;
    out.witness = scan.witness;
    out.min_abs_sum = scan.min_abs;
    out.max_abs_sum = scan.max_abs;
    out.scale = scan.scale;
    return out;
}

CauchyTensor build_cauchy(const std::vector<std::vector<cplx>>& eigs,
                          const SolveOptions& opts) {
    if (!(opts.truncation_tol > 0.0) || !(opts.singularity_tol > 0.0)) {
        throw precondition_error("solve tolerances must be positive");
    }
    const std::size_t nf = eigs.size();
    if (nf != 2 && nf != 3) throw dimension_error("expected 2 or 3 eigenvalue lists");
    const Solvability s = solvability_check(eigs, opts.singularity_tol);
    if (!s.ok) {
        throw singularity_error("eigenvalue sums contain a numerical zero", s.witness);
    }
    CauchyTensor out;
    out.factors = nf;
    out.values = Tensor3(eigs[0].size(), eigs[1].size(), nf == 3 ? eigs[2].size() : 1);
    scan_sums(eigs, &out.values);
    out.max_abs_entry = out.values.max_abs();
    out.min_abs_sum = s.min_abs_sum;
    out.max_abs_sum = s.max_abs_sum;
    return out;
}

std::pair<DenseMatrix, SolveReport> solve_with_eig_2d(const EigenDecomposition& e1,
                                                      const EigenDecomposition& e2,
                                                      const DenseMatrix& y,
                                                      const SolveOptions& opts) {
    const auto t0 = clock_type::now();
    if (e1.u.rows() != y.rows() || e2.u.rows() != y.cols()) {
        throw dimension_error("factor orders do not match the right-hand side");
    }
    const CauchyTensor c = build_cauchy({to_complex(e1.lambda), to_complex(e2.lambda)}, opts);
    const DenseMatrix cm = c.matrix();

    const DenseMatrix yhat = matmul(matmul(e1.u.adjoint(), y), e2.u.conjugate());
    const DenseMatrix xhat = hadamard(cm, yhat);
    DenseMatrix x = matmul(matmul(e1.u, xhat), e2.u.transpose());

    SolveReport rep;
    rep.terms_used = 1;
    rep.term_norms = {xhat.frobenius_norm()};
    rep.max_abs_cauchy = c.max_abs_entry;
    rep.min_abs_eigsum = c.min_abs_sum;
    rep.max_abs_eigsum = c.max_abs_sum;
    rep.elapsed = seconds_since(t0);
    return {std::move(x), std::move(rep)};
}

std::pair<Tensor3, SolveReport> solve_with_eig_3d(const EigenDecomposition& e1,
                                                  const EigenDecomposition& e2,
                                                  const EigenDecomposition& e3,
                                                  const Tensor3& y,
                                                  const SolveOptions& opts) {
    const auto t0 = clock_type::now();
    if (e1.u.rows() != y.dim(0) || e2.u.rows() != y.dim(1) || e3.u.rows() != y.dim(2)) {
        throw dimension_error("factor orders do not match the right-hand side");
    }
    const CauchyTensor c = build_cauchy(
        {to_complex(e1.lambda), to_complex(e2.lambda), to_complex(e3.lambda)}, opts);

    Tensor3 yhat = mode_product(y, e1.u.adjoint(), 1);
    yhat = mode_product(yhat, e2.u.adjoint(), 2);
    yhat = mode_product(yhat, e3.u.adjoint(), 3);
    const Tensor3 xhat = hadamard(c.values, yhat);
    Tensor3 x = mode_product(xhat, e1.u, 1);
    x = mode_product(x, e2.u, 2);
    x = mode_product(x, e3.u, 3);

    SolveReport rep;
    rep.terms_used = 1;
    rep.term_norms = {xhat.frobenius_norm()};
    rep.max_abs_cauchy = c.max_abs_entry;
    rep.min_abs_eigsum = c.min_abs_sum;
    rep.max_abs_eigsum = c.max_abs_sum;
    rep.elapsed = seconds_since(t0);
    return {std::move(x), std::move(rep)};
}

std::pair<DenseMatrix, SolveReport> solve_with_schur_2d(const SchurDecomposition& s1,
                                                        const SchurDecomposition& s2,
                                                        const DenseMatrix& y,
                                                        const SolveOptions& opts,
                                                        const DenseMatrix* reference_hat) {
    const auto t0 = clock_type::now();
    const std::size_t n1 = s1.u.rows();
    const std::size_t n2 = s2.u.rows();
    if (n1 != y.rows() || n2 != y.cols()) {
        throw dimension_error("factor orders do not match the right-hand side");
    }
    const CauchyTensor c = build_cauchy({s1.lambda, s2.lambda}, opts);
    const DenseMatrix cm = c.matrix();

    const DenseMatrix yhat = matmul(matmul(s1.u.adjoint(), y), s2.u.conjugate());
    DenseMatrix k = hadamard(cm, yhat);
    DenseMatrix sum = k;

    SolveReport rep;
    rep.max_abs_cauchy = c.max_abs_entry;
    rep.min_abs_eigsum = c.min_abs_sum;
    rep.max_abs_eigsum = c.max_abs_sum;

    double ref_norm = 0.0;
    if (reference_hat != nullptr) {
        ref_norm = reference_hat->frobenius_norm();
        DenseMatrix diff = *reference_hat;
        diff -= sum;
        rep.error_trace.push_back(rel_residual_norm(diff.frobenius_norm(), ref_norm));
    }

    const std::size_t bound = n1 + n2 - 1;
    const double k0 = k.frobenius_norm();
    rep.term_norms.push_back(k0);
    rep.terms_used = 1;
    if (k0 > 0.0) {
        const std::size_t cap = opts.max_terms > 0 ? opts.max_terms : bound;
        double sign = -1.0;
        double last = k0;
        for (std::size_t j = 1; j < cap; ++j) {
            DenseMatrix m = strict_upper_times(s1.tstrict, k);
            m += times_strict_upper_t(k, s2.tstrict);
            k = hadamard(cm, m);
            last = k.frobenius_norm();
            rep.term_norms.push_back(last);
            ++rep.terms_used;
            kernels::active().axpy(sum.size(), sign, k.data(), sum.data());
            sign = -sign;
            if (reference_hat != nullptr) {
                DenseMatrix diff = *reference_hat;
                diff -= sum;
                rep.error_trace.push_back(rel_residual_norm(diff.frobenius_norm(), ref_norm));
            }
            if (last == 0.0) break;
            if (!opts.trace_full_series && last <= opts.truncation_tol * k0) break;
        }
        rep.series_converged = last == 0.0 || last <= opts.truncation_tol * k0 ||
                               rep.terms_used >= bound;
    }

    DenseMatrix x = matmul(matmul(s1.u, sum), s2.u.transpose());
    rep.elapsed = seconds_since(t0);
    return {std::move(x), std::move(rep)};
}

std::pair<Tensor3, SolveReport> solve_with_schur_3d(const SchurDecomposition& s1,
                                                    const SchurDecomposition& s2,
                                                    const SchurDecomposition& s3,
                                                    const Tensor3& y,
                                                    const SolveOptions& opts) {
    const auto t0 = clock_type::now();
    const std::size_t n1 = s1.u.rows();
    const std::size_t n2 = s2.u.rows();
    const std::size_t n3 = s3.u.rows();
    if (n1 != y.dim(0) || n2 != y.dim(1) || n3 != y.dim(2)) {
        throw dimension_error("factor orders do not match the right-hand side");
    }
    const CauchyTensor c = build_cauchy({s1.lambda, s2.lambda, s3.lambda}, opts);

    Tensor3 yhat = mode_product(y, s1.u.adjoint(), 1);
    yhat = mode_product(yhat, s2.u.adjoint(), 2);
    yhat = mode_product(yhat, s3.u.adjoint(), 3);
    Tensor3 k = hadamard(c.values, yhat);
    Tensor3 sum = k;

    SolveReport rep;
    rep.max_abs_cauchy = c.max_abs_entry;
    rep.min_abs_eigsum = c.min_abs_sum;
    rep.max_abs_eigsum = c.max_abs_sum;

    run_series(sum, k, opts, n1 + n2 + n3 - 2, rep, [&](const Tensor3& kj) {
        Tensor3 m = mode_product(kj, s1.tstrict, 1);
        m += mode_product(kj, s2.tstrict, 2);
        m += mode_product(kj, s3.tstrict, 3);
        return hadamard(c.values, m);
    });

    Tensor3 x = mode_product(sum, s1.u, 1);
    x = mode_product(x, s2.u, 2);
    x = mode_product(x, s3.u, 3);
    rep.elapsed = seconds_since(t0);
    return {std::move(x), std::move(rep)};
}

std::pair<DenseMatrix, SolveReport> solve_normal_2d(const DenseMatrix& a1,
                                                    const DenseMatrix& a2,
                                                    const DenseMatrix& y,
                                                    const SolveOptions& opts) {
    const auto t0 = clock_type::now();
    const EigenDecomposition e1 = hermitian_eig(a1);
    const EigenDecomposition e2 = hermitian_eig(a2);
    auto [x, rep] = solve_with_eig_2d(e1, e2, y, opts);
    DenseMatrix r = apply_kron_sum(a1, a2, x);
    r -= y;
    rep.residual = rel_residual_norm(r.frobenius_norm(), y.frobenius_norm());
    rep.elapsed = seconds_since(t0);
    return {std::move(x), std::move(rep)};
}

std::pair<Tensor3, SolveReport> solve_normal_3d(const DenseMatrix& a1,
                                                const DenseMatrix& a2,
                                                const DenseMatrix& a3,
                                                const Tensor3& y,
                                                const SolveOptions& opts) {
    const auto t0 = clock_type::now();
    const EigenDecomposition e1 = hermitian_eig(a1);
    const EigenDecomposition e2 = hermitian_eig(a2);
    const EigenDecomposition e3 = hermitian_eig(a3);
    auto [x, rep] = solve_with_eig_3d(e1, e2, e3, y, opts);
    Tensor3 r = apply_kron_sum(a1, a2, a3, x);
    r -= y;
    rep.residual = rel_residual_norm(r.frobenius_norm(), y.frobenius_norm());
    rep.elapsed = seconds_since(t0);
    return {std::move(x), std::move(rep)};
}

std::pair<DenseMatrix, SolveReport> solve_general_2d(const DenseMatrix& a1,
                                                     const DenseMatrix& a2,
                                                     const DenseMatrix& y,
                                                     const SolveOptions& opts) {
    const auto t0 = clock_type::now();
    const SchurDecomposition s1 = complex_schur(a1);
    const SchurDecomposition s2 = complex_schur(a2);
    auto [x, rep] = solve_with_schur_2d(s1, s2, y, opts);
    DenseMatrix r = apply_kron_sum(a1, a2, x);
    r -= y;
    rep.residual = rel_residual_norm(r.frobenius_norm(), y.frobenius_norm());
    rep.elapsed = seconds_since(t0);
    return {std::move(x), std::move(rep)};
}

std::pair<Tensor3, SolveReport> solve_general_3d(const DenseMatrix& a1,
                                                 const DenseMatrix& a2,
                                                 const DenseMatrix& a3,
                                                 const Tensor3& y,
                                                 const SolveOptions& opts) {
    const auto t0 = clock_type::now();
    const SchurDecomposition s1 = complex_schur(a1);
    const SchurDecomposition s2 = complex_schur(a2);
    const SchurDecomposition s3 = complex_schur(a3);
    auto [x, rep] = solve_with_schur_3d(s1, s2, s3, y, opts);
    Tensor3 r = apply_kron_sum(a1, a2, a3, x);
    r -= y;
    rep.residual = rel_residual_norm(r.frobenius_norm(), y.frobenius_norm());
    rep.elapsed = seconds_since(t0);
    return {std::move(x), std::move(rep)};
}

} // namespace kronsum
