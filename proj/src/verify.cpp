#include "kronsum/verify.hpp"

#include <algorithm>
#include <cmath>

#include "kronsum/kernels.hpp"
#include "kronsum/kron_solve.hpp"
#include "kronsum/oracle.hpp"
#include "kronsum/random.hpp"
#include "kronsum/tensor_ops.hpp"

namespace kronsum::verify {
namespace {

std::size_t pick(Rng& rng, std::size_t lo, std::size_t hi) {
    return lo + static_cast<std::size_t>(rng() % (hi - lo + 1));
}

double rel_diff(const std::vector<cplx>& a, const std::vector<cplx>& b) {
    double num = 0.0, den = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        num += std::norm(a[i] - b[i]);
        den += std::norm(b[i]);
    }
    return den > 0.0 ? std::sqrt(num / den) : std::sqrt(num);
}

std::vector<cplx> dense_matvec(const DenseMatrix& m, const std::vector<cplx>& v) {
    std::vector<cplx> out(m.rows());
    for (std::size_t j = 0; j < m.cols(); ++j)
        for (std::size_t i = 0; i < m.rows(); ++i) out[i] += m(i, j) * v[j];
    return out;
}

SuiteResult check_remark27(Rng& rng, std::size_t count) {
    SuiteResult res{"vec(ABC) = (C^T kron A) vec(B)", count, 0.0, 1e-12, false};
    for (std::size_t it = 0; it < count; ++it) {
        const std::size_t k = pick(rng, 1, 5), l = pick(rng, 1, 5);
        const std::size_t m = pick(rng, 1, 5), n = pick(rng, 1, 5);
        const DenseMatrix a = random_matrix(rng, k, l);
        const DenseMatrix b = random_matrix(rng, l, m);
        const DenseMatrix c = random_matrix(rng, m, n);
        const auto lhs = vec_matrix(matmul(matmul(a, b), c));
        const auto rhs = dense_matvec(kronecker_product(c.transpose(), a), vec_matrix(b));
        res.worst = std::max(res.worst, rel_diff(lhs, rhs));
    }
    res.passed = res.worst <= res.tolerance;
    return res;
}

SuiteResult check_remark28(Rng& rng, std::size_t count) {
    SuiteResult res{"vec(A had B) = vec(A) had vec(B) exactly", count, 0.0, 0.0, false};
    for (std::size_t it = 0; it < count; ++it) {
        const std::size_t m = pick(rng, 1, 6), n = pick(rng, 1, 6);
        const DenseMatrix a = random_matrix(rng, m, n);
        const DenseMatrix b = random_matrix(rng, m, n);
        const auto lhs = vec_matrix(hadamard(a, b));
        // same elementwise multiplications on the vec side
        const auto va = vec_matrix(a);
        const auto vb = vec_matrix(b);
        std::vector<cplx> rhs(va.size());
        kernels::active().hadamard(va.size(), va.data(), vb.data(), rhs.data());
        for (std::size_t i = 0; i < lhs.size(); ++i) {
            res.worst = std::max(res.worst, std::abs(lhs[i] - rhs[i]));
        }
    }
    res.passed = res.worst <= res.tolerance;
    return res;
}

SuiteResult check_remark29(Rng& rng, std::size_t count) {
    SuiteResult res{"vec(u outer v) = v kron u exactly", count, 0.0, 0.0, false};
    for (std::size_t it = 0; it < count; ++it) {
        const std::size_t m = pick(rng, 1, 6), n = pick(rng, 1, 6);
        std::vector<cplx> u(m), v(n);
        for (auto& z : u) z = unit_complex_gaussian(rng);
        for (auto& z : v) z = unit_complex_gaussian(rng);
        const auto lhs = vec_matrix(outer_product(u, v));
        const DenseMatrix vk = kronecker_product(DenseMatrix(n, 1, v), DenseMatrix(m, 1, u));
        for (std::size_t i = 0; i < lhs.size(); ++i) {
            res.worst = std::max(res.worst, std::abs(lhs[i] - vk(i, 0)));
        }
    }
    res.passed = res.worst <= res.tolerance;
    return res;
}

SuiteResult check_lemma1(Rng& rng, std::size_t count) {
    SuiteResult res{"vec(T x1 A x2 B x3 C) = (C kron B kron A) vec(T)", count, 0.0, 1e-12,
                    false};
    for (std::size_t it = 0; it < count; ++it) {
        const std::size_t d1 = pick(rng, 1, 4), d2 = pick(rng, 1, 4), d3 = pick(rng, 1, 4);
        const std::size_t k1 = pick(rng, 1, 4), k2 = pick(rng, 1, 4), k3 = pick(rng, 1, 4);
        const Tensor3 t = random_tensor(rng, d1, d2, d3);
        const DenseMatrix a = random_matrix(rng, k1, d1);
        const DenseMatrix b = random_matrix(rng, k2, d2);
        const DenseMatrix c = random_matrix(rng, k3, d3);
        const auto lhs =
            vec_tensor(mode_product(mode_product(mode_product(t, a, 1), b, 2), c, 3));
        const auto rhs = dense_matvec(
            kronecker_product(c, kronecker_product(b, a)), vec_tensor(t));
        res.worst = std::max(res.worst, rel_diff(lhs, rhs));
    }
    res.passed = res.worst <= res.tolerance;
    return res;
}

SuiteResult check_lemma2(Rng& rng, std::size_t count) {
    SuiteResult res{"(L3 ksum L2 ksum L1) diag(vec C) = I", count, 0.0, 1e-13, false};
    for (std::size_t it = 0; it < count; ++it) {
        const std::size_t n1 = pick(rng, 1, 4), n2 = pick(rng, 1, 4), n3 = pick(rng, 1, 4);
        std::vector<std::vector<cplx>> eigs(3);
        DenseMatrix l1(n1, n1), l2(n2, n2), l3(n3, n3);
        for (std::size_t i = 0; i < n1; ++i) {
            eigs[0].push_back(0.5 + std::abs(unit_gaussian(rng)));
            l1(i, i) = eigs[0][i];
        }
        for (std::size_t i = 0; i < n2; ++i) {
            eigs[1].push_back(0.5 + std::abs(unit_gaussian(rng)));
            l2(i, i) = eigs[1][i];
        }
        for (std::size_t i = 0; i < n3; ++i) {
            eigs[2].push_back(0.5 + std::abs(unit_gaussian(rng)));
            l3(i, i) = eigs[2][i];
        }
        const CauchyTensor c = build_cauchy(eigs);
        const auto vc = vec_tensor(c.values);
        const DenseMatrix ks = kronecker_sum3(l3, l2, l1);
        // product with diag(vec C) scales columns
        double worst = 0.0;
        for (std::size_t j = 0; j < vc.size(); ++j)
            for (std::size_t i = 0; i < vc.size(); ++i) {
                const cplx v = ks(i, j) * vc[j] - (i == j ? cplx{1.0} : cplx{});
                worst = std::max(worst, std::abs(v));
            }
        res.worst = std::max(res.worst, worst);
    }
    res.passed = res.worst <= res.tolerance;
    return res;
}

// Triangular factors with identity unitaries exercise the raw series
// inverse of lemma 3.
SchurDecomposition triangular_as_schur(const DenseMatrix& t) {
    SchurDecomposition s;
    s.u = DenseMatrix::identity(t.rows());
    s.t = t;
    s.lambda.resize(t.rows());
    for (std::size_t i = 0; i < t.rows(); ++i) s.lambda[i] = t(i, i);
    s.tstrict = DenseMatrix(t.rows(), t.rows());
    for (std::size_t j = 1; j < t.cols(); ++j)
        for (std::size_t i = 0; i < j; ++i) s.tstrict(i, j) = t(i, j);
    return s;
}

SuiteResult check_lemma3(Rng& rng, std::size_t count) {
    SuiteResult res{"triangular Neumann-series inverse vs dense inverse", count, 0.0, 1e-10,
                    false};
    for (std::size_t it = 0; it < count; ++it) {
        const std::size_t n1 = pick(rng, 1, 4), n2 = pick(rng, 1, 4), n3 = pick(rng, 1, 4);
        const DenseMatrix t1 = random_upper_triangular(rng, n1, 3.0);
        const DenseMatrix t2 = random_upper_triangular(rng, n2, 3.0);
        const DenseMatrix t3 = random_upper_triangular(rng, n3, 3.0);
        const Tensor3 y = random_tensor(rng, n1, n2, n3);
        const auto [x, rep] = solve_with_schur_3d(triangular_as_schur(t1),
                                                  triangular_as_schur(t2),
                                                  triangular_as_schur(t3), y, {});
        const Tensor3 xo = oracle::oracle_solve_kron(t1, t2, t3, y);
        res.worst = std::max(res.worst, rel_diff(vec_tensor(x), vec_tensor(xo)));
    }
    res.passed = res.worst <= res.tolerance;
    return res;
}

SuiteResult check_mode_commute(Rng& rng, std::size_t count) {
    SuiteResult res{"mode products commute across distinct modes", count, 0.0, 1e-14, false};
    for (std::size_t it = 0; it < count; ++it) {
        const std::size_t d1 = pick(rng, 1, 5), d2 = pick(rng, 1, 5), d3 = pick(rng, 1, 5);
        const Tensor3 t = random_tensor(rng, d1, d2, d3);
        const DenseMatrix a = random_matrix(rng, pick(rng, 1, 5), d1);
        const DenseMatrix b = random_matrix(rng, pick(rng, 1, 5), d2);
        const auto lhs = vec_tensor(mode_product(mode_product(t, a, 1), b, 2));
        const auto rhs = vec_tensor(mode_product(mode_product(t, b, 2), a, 1));
        res.worst = std::max(res.worst, rel_diff(lhs, rhs));
    }
    res.passed = res.worst <= res.tolerance;
    return res;
}

SuiteResult check_apply_kron_sum(Rng& rng, std::size_t count) {
    SuiteResult res{"apply_kron_sum matches the materialized Kronecker sum", count, 0.0,
                    1e-12, false};
    for (std::size_t it = 0; it < count; ++it) {
        const std::size_t n1 = pick(rng, 1, 4), n2 = pick(rng, 1, 4), n3 = pick(rng, 1, 4);
        const DenseMatrix a1 = random_matrix(rng, n1, n1);
        const DenseMatrix a2 = random_matrix(rng, n2, n2);
        const DenseMatrix a3 = random_matrix(rng, n3, n3);
        const Tensor3 x = random_tensor(rng, n1, n2, n3);
        const auto lhs = vec_tensor(apply_kron_sum(a1, a2, a3, x));
        const auto rhs = dense_matvec(kronecker_sum3(a3, a2, a1), vec_tensor(x));
        res.worst = std::max(res.worst, rel_diff(lhs, rhs));
    }
    res.passed = res.worst <= res.tolerance;
    return res;
}

SuiteResult check_solver_family(Rng& rng, const char* name, bool three_d, bool general,
                                std::size_t count) {
    SuiteResult res{name, count, 0.0, 1e-9, false};
    for (std::size_t it = 0; it < count; ++it) {
        const std::size_t n1 = pick(rng, 2, 5), n2 = pick(rng, 2, 5), n3 = pick(rng, 2, 5);
        auto factor = [&](std::size_t n) {
            if (general) {
                DenseMatrix a = random_matrix(rng, n, n);
                for (std::size_t i = 0; i < n; ++i) a(i, i) += 3.0;
                return a;
            }
            return random_hermitian(rng, n, 3.0);
        };
        const DenseMatrix a1 = factor(n1);
        const DenseMatrix a2 = factor(n2);
        double err = 0.0, resid = 0.0;
        if (three_d) {
            const DenseMatrix a3 = factor(n3);
            const Tensor3 y = random_tensor(rng, n1, n2, n3);
            const auto [x, rep] = general ? solve_general_3d(a1, a2, a3, y)
                                          : solve_normal_3d(a1, a2, a3, y);
            const Tensor3 xo = oracle::oracle_solve_kron(a1, a2, a3, y);
            err = rel_diff(vec_tensor(x), vec_tensor(xo));
            resid = rep.residual;
        } else {
            const DenseMatrix y = random_matrix(rng, n1, n2);
            const auto [x, rep] =
                general ? solve_general_2d(a1, a2, y) : solve_normal_2d(a1, a2, y);
            const DenseMatrix xo = oracle::oracle_solve_kron(a1, a2, y);
            err = rel_diff(vec_matrix(x), vec_matrix(xo));
            resid = rep.residual;
        }
        res.worst = std::max({res.worst, err, resid});
    }
    res.passed = res.worst <= res.tolerance;
    return res;
}

SuiteResult check_nilpotency(Rng& rng) {
    SuiteResult res{"Neumann series terminates at the nilpotency bound", 0, 0.0, 1e-13,
                    false};
    res.passed = true;
    for (std::size_t n1 = 1; n1 <= 4; ++n1)
        for (std::size_t n2 = 1; n2 <= 4; ++n2)
            for (std::size_t n3 = 1; n3 <= 4; ++n3) {
                const DenseMatrix t1 = random_upper_triangular(rng, n1, 2.0);
                const DenseMatrix t2 = random_upper_triangular(rng, n2, 2.0);
                const DenseMatrix t3 = random_upper_triangular(rng, n3, 2.0);
                const Tensor3 y = random_tensor(rng, n1, n2, n3);
                const std::size_t bound = (n1 - 1) + (n2 - 1) + (n3 - 1) + 1;
                SolveOptions opts;
                opts.max_terms = bound + 3;
                opts.trace_full_series = true;
                const auto [x, rep] =
                    solve_with_schur_3d(triangular_as_schur(t1), triangular_as_schur(t2),
                                        triangular_as_schur(t3), y, opts);
                const double k0 = rep.term_norms.front();
                for (std::size_t j = bound; j < rep.term_norms.size(); ++j) {
                    const double r = k0 > 0.0 ? rep.term_norms[j] / k0 : rep.term_norms[j];
                    res.worst = std::max(res.worst, r);
                }
                ++res.instances;
            }
    res.passed = res.worst <= res.tolerance;
    return res;
}

SuiteResult check_singularity(Rng& rng, std::size_t count) {
    SuiteResult res{"planted zero-sum spectra raise the right witness", count, 0.0, 0.0,
                    false};
    std::size_t good = 0;
    for (std::size_t it = 0; it < count; ++it) {
        const bool three = (it % 2 == 0);
        const std::size_t n1 = pick(rng, 2, 5), n2 = pick(rng, 2, 5);
        const std::size_t n3 = three ? pick(rng, 2, 5) : 0;
        std::vector<std::vector<cplx>> eigs(three ? 3 : 2);
        auto fill = [&](std::vector<cplx>& v, std::size_t n) {
            v.resize(n);
            for (auto& z : v) z = 0.5 + 2.0 * std::abs(unit_gaussian(rng));
        };
        fill(eigs[0], n1);
        fill(eigs[1], n2);
        if (three) fill(eigs[2], n3);
        const std::size_t a = pick(rng, 0, n1 - 1), b = pick(rng, 0, n2 - 1);
        const std::size_t c = three ? pick(rng, 0, n3 - 1) : 0;
        eigs[0][a] = -(eigs[1][b] + (three ? eigs[2][c] : cplx{}));
        bool caught = false;
        try {
            build_cauchy(eigs);
        } catch (const singularity_error& e) {
            caught = e.witness() == std::array<std::size_t, 3>{a + 1, b + 1,
                                                               three ? c + 1 : 0};
        }
        if (caught) ++good;
    }
    res.worst = static_cast<double>(count - good);
    res.passed = good == count;
    return res;
}

SuiteResult check_kernel_equivalence(Rng& rng, std::size_t count) {
    SuiteResult res{"scalar and avx2 kernels agree", 0, 0.0, 1e-13, false};
    if (!kernels::avx2_available()) {
        res.name = "scalar and avx2 kernels agree (avx2 unavailable: skipped)";
        res.passed = true;
        return res;
    }
    const auto& sc = kernels::scalar_table();
    const auto& vx = *kernels::avx2_table();
    for (std::size_t it = 0; it < count; ++it) {
        const std::size_t m = pick(rng, 1, 17), n = pick(rng, 1, 17), k = pick(rng, 1, 17);
        const DenseMatrix a = random_matrix(rng, m, k);
        const DenseMatrix b = random_matrix(rng, k, n);
        DenseMatrix c1(m, n), c2(m, n);
        sc.gemm_acc(m, n, k, a.data(), m, b.data(), k, c1.data(), m);
        vx.gemm_acc(m, n, k, a.data(), m, b.data(), k, c2.data(), m);
        res.worst = std::max(res.worst, rel_diff(c1.entries(), c2.entries()));

        const std::size_t len = pick(rng, 1, 33);
        std::vector<cplx> x(len), y(len), o1(len), o2(len);
        for (auto& z : x) z = unit_complex_gaussian(rng);
        for (auto& z : y) z = unit_complex_gaussian(rng);
        sc.hadamard(len, x.data(), y.data(), o1.data());
        vx.hadamard(len, x.data(), y.data(), o2.data());
        res.worst = std::max(res.worst, rel_diff(o1, o2));

        const cplx alpha = unit_complex_gaussian(rng);
        o1 = y;
        o2 = y;
        sc.axpy(len, alpha, x.data(), o1.data());
        vx.axpy(len, alpha, x.data(), o2.data());
        res.worst = std::max(res.worst, rel_diff(o1, o2));

        const double ns = sc.norm_sq(len, x.data());
        const double nv = vx.norm_sq(len, x.data());
        res.worst = std::max(res.worst, std::abs(ns - nv) / std::max(ns, 1e-300));

        const cplx ds = sc.dotc(len, x.data(), y.data());
        const cplx dv = vx.dotc(len, x.data(), y.data());
        res.worst = std::max(res.worst, std::abs(ds - dv) / std::max(std::abs(ds), 1e-300));

        const double cc = std::cos(0.7 + static_cast<double>(it));
        const cplx ss = std::sin(0.7 + static_cast<double>(it)) *
                        std::exp(cplx(0.0, 0.3 * static_cast<double>(it % 7)));
        auto x1 = x, y1 = y, x2 = x, y2 = y;
        sc.rot(len, x1.data(), y1.data(), cc, ss);
        vx.rot(len, x2.data(), y2.data(), cc, ss);
        res.worst = std::max(res.worst, std::max(rel_diff(x1, x2), rel_diff(y1, y2)));

        DenseMatrix r1 = random_matrix(rng, 2, len);
        DenseMatrix r2 = r1;
        sc.rot_rowpair(len, r1.data(), 2, cc, ss);
        vx.rot_rowpair(len, r2.data(), 2, cc, ss);
        res.worst = std::max(res.worst, rel_diff(r1.entries(), r2.entries()));
        ++res.instances;
    }
    res.passed = res.worst <= res.tolerance;
    return res;
}

} // namespace

bool Summary::all_passed() const {
    return std::all_of(suites.begin(), suites.end(),
                       [](const SuiteResult& s) { return s.passed; });
}

Summary run_all(std::uint64_t seed) {
    Rng rng(seed);
    Summary s;
    s.suites.push_back(check_remark27(rng, 60));
    s.suites.push_back(check_remark28(rng, 60));
    s.suites.push_back(check_remark29(rng, 60));
    s.suites.push_back(check_lemma1(rng, 60));
    s.suites.push_back(check_lemma2(rng, 60));
    s.suites.push_back(check_lemma3(rng, 60));
    s.suites.push_back(check_mode_commute(rng, 60));
    s.suites.push_back(check_apply_kron_sum(rng, 60));
    s.suites.push_back(check_solver_family(rng, "2D normal solver vs dense oracle", false,
                                           false, 25));
    s.suites.push_back(check_solver_family(rng, "3D normal solver vs dense oracle", true,
                                           false, 25));
    s.suites.push_back(check_solver_family(rng, "2D general solver vs dense oracle", false,
                                           true, 25));
    s.suites.push_back(check_solver_family(rng, "3D general solver vs dense oracle", true,
                                           true, 25));
    s.suites.push_back(check_nilpotency(rng));
    s.suites.push_back(check_singularity(rng, 30));
    s.suites.push_back(check_kernel_equivalence(rng, 60));
    return s;
}

} // namespace kronsum::verify
