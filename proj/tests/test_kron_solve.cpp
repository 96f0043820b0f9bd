#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "kronsum/kron_solve.hpp"
#include "kronsum/oracle.hpp"
#include "kronsum/random.hpp"
#include "kronsum/tensor_ops.hpp"
#include "test_helpers.hpp"

using namespace kronsum;
using kronsum::testing::rel_diff;

TEST_CASE("solvability check basics") {
    const Solvability ok = solvability_check({{1.0, 2.0}, {3.0, 4.0}});
    CHECK(ok.ok);
    CHECK(ok.min_abs_sum == doctest::Approx(4.0));

    const Solvability bad = solvability_check({{1.0, -3.0}, {3.0, 4.0}});
    CHECK_FALSE(bad.ok);
    CHECK(bad.witness == std::array<std::size_t, 3>{2, 1, 0});

    // 3D Laplacian spectrum at N=3, three copies: min sum 3(2-sqrt 2)
    const std::vector<cplx> lap{2.0 - std::sqrt(2.0), 2.0, 2.0 + std::sqrt(2.0)};
    const Solvability l3 = solvability_check({lap, lap, lap});
    CHECK(l3.ok);
    CHECK(l3.min_abs_sum == doctest::Approx(3.0 * (2.0 - std::sqrt(2.0))).epsilon(1e-12));
}

TEST_CASE("build_cauchy values and failure witness") {
    const CauchyTensor c = build_cauchy({{1.0, 2.0}, {3.0, 4.0}});
    const DenseMatrix m = c.matrix();
    CHECK(std::abs(m(0, 0) - 0.25) <= 1e-15);
    CHECK(std::abs(m(1, 0) - 0.2) <= 1e-15);
    CHECK(std::abs(m(0, 1) - 0.2) <= 1e-15);
    CHECK(std::abs(m(1, 1) - 1.0 / 6.0) <= 1e-15);

    const CauchyTensor ones = build_cauchy({{1.0, 1.0}, {1.0, 1.0}, {1.0, 1.0}});
    for (const cplx& z : ones.values.entries()) CHECK(std::abs(z - 1.0 / 3.0) <= 1e-15);

    CHECK_THROWS_AS(build_cauchy({{1.0, -3.0}, {3.0, 4.0}}), singularity_error);
    try {
        build_cauchy({{1.0, -3.0}, {3.0, 4.0}});
    } catch (const singularity_error& e) {
        CHECK(e.witness() == std::array<std::size_t, 3>{2, 1, 0});
    }
}

TEST_CASE("solve_normal_2d identity and diagonal examples") {
    const DenseMatrix i2 = DenseMatrix::identity(2);
    const DenseMatrix y(2, 2, {2.0, 6.0, 4.0, 8.0}); // [[2,4],[6,8]]
    const auto [x, rep] = solve_normal_2d(i2, i2, y);
    CHECK(std::abs(x(0, 0) - 1.0) <= 1e-14);
    CHECK(std::abs(x(1, 0) - 3.0) <= 1e-14);
    CHECK(std::abs(x(0, 1) - 2.0) <= 1e-14);
    CHECK(std::abs(x(1, 1) - 4.0) <= 1e-14);
    CHECK(rep.residual <= 1e-14);
    CHECK(rep.terms_used == 1);
    CHECK(rep.term_norms.size() == rep.terms_used);

    const DenseMatrix d1(2, 2, {1.0, 0.0, 0.0, 2.0});
    const DenseMatrix d2(2, 2, {10.0, 0.0, 0.0, 20.0});
    const DenseMatrix ones(2, 2, std::vector<cplx>(4, 1.0));
    const auto [xd, repd] = solve_normal_2d(d1, d2, ones);
    CHECK(std::abs(xd(0, 0) - 1.0 / 11.0) <= 1e-14);
    CHECK(std::abs(xd(1, 0) - 1.0 / 12.0) <= 1e-14);
    CHECK(std::abs(xd(0, 1) - 1.0 / 21.0) <= 1e-14);
    CHECK(std::abs(xd(1, 1) - 1.0 / 22.0) <= 1e-14);
}

TEST_CASE("solve_normal_2d matches the oracle on random Hermitian factors") {
    Rng rng(301);
    const DenseMatrix a1 = random_hermitian(rng, 3, 3.0);
    const DenseMatrix a2 = random_hermitian(rng, 4, 3.0);
    const DenseMatrix y = random_matrix(rng, 3, 4);
    const auto [x, rep] = solve_normal_2d(a1, a2, y);
    const DenseMatrix xo = oracle::oracle_solve_kron(a1, a2, y);
    CHECK(rel_diff(x, xo) <= 1e-10);
    CHECK(rep.residual <= 1e-10);
}

TEST_CASE("solve_normal rejects non-Hermitian factors with guidance") {
    const DenseMatrix bad(2, 2, {0.0, -1.0, 1.0, 0.0}); // normal but not Hermitian
    const DenseMatrix y(2, 2);
    CHECK_THROWS_WITH_AS(solve_normal_2d(bad, DenseMatrix::identity(2), y),
                         doctest::Contains("general solver"), precondition_error);
}

TEST_CASE("solve_normal_3d identity, diagonal and oracle cases") {
    const DenseMatrix i2 = DenseMatrix::identity(2);
    const Tensor3 threes(2, 2, 2, std::vector<cplx>(8, 3.0));
    const auto [x, rep] = solve_normal_3d(i2, i2, i2, threes);
    for (const cplx& z : x.entries()) CHECK(std::abs(z - 1.0) <= 1e-14);
    CHECK(rep.residual <= 1e-14);

    const DenseMatrix d(2, 2, {1.0, 0.0, 0.0, 2.0});
    Rng rng(302);
    const Tensor3 y = random_tensor(rng, 2, 2, 2);
    const auto [xd, repd] = solve_normal_3d(d, d, d, y);
    for (std::size_t k = 0; k < 2; ++k)
        for (std::size_t j = 0; j < 2; ++j)
            for (std::size_t i = 0; i < 2; ++i) {
                const double denom = static_cast<double>(i + 1 + j + 1 + k + 1);
                CHECK(std::abs(xd(i, j, k) - y(i, j, k) / denom) <= 1e-13);
            }

    const DenseMatrix h1 = random_hermitian(rng, 3, 3.0);
    const DenseMatrix h2 = random_hermitian(rng, 2, 3.0);
    const DenseMatrix h3 = random_hermitian(rng, 4, 3.0);
    const Tensor3 yr = random_tensor(rng, 3, 2, 4);
    const auto [xr, repr] = solve_normal_3d(h1, h2, h3, yr);
    const Tensor3 xo = oracle::oracle_solve_kron(h1, h2, h3, yr);
    CHECK(rel_diff(xr, xo) <= 1e-10);
    CHECK(repr.residual <= 1e-10);
}

TEST_CASE("solve_general_2d agrees with the normal path on Hermitian input") {
    Rng rng(303);
    const DenseMatrix a1 = random_hermitian(rng, 3, 3.0);
    const DenseMatrix a2 = random_hermitian(rng, 3, 3.0);
    const DenseMatrix y = random_matrix(rng, 3, 3);
    const auto [xg, repg] = solve_general_2d(a1, a2, y);
    const auto [xn, repn] = solve_normal_2d(a1, a2, y);
    CHECK(rel_diff(xg, xn) <= 1e-9);
}

TEST_CASE("solve_general_3d agrees with the normal path on Hermitian input") {
    Rng rng(304);
    const DenseMatrix a1 = random_hermitian(rng, 3, 3.0);
    const DenseMatrix a2 = random_hermitian(rng, 2, 3.0);
    const DenseMatrix a3 = random_hermitian(rng, 4, 3.0);
    const Tensor3 y = random_tensor(rng, 3, 2, 4);
    const auto [xg, repg] = solve_general_3d(a1, a2, a3, y);
    const auto [xn, repn] = solve_normal_3d(a1, a2, a3, y);
    CHECK(rel_diff(xg, xn) <= 1e-9);
}

TEST_CASE("solve_general_2d hand-worked triangular instance") {
    // A1 = [[1,1],[0,1]], A2 = I2: per-block systems [[2,1],[0,2]]
    const DenseMatrix a1(2, 2, {1.0, 0.0, 1.0, 1.0});
    const DenseMatrix i2 = DenseMatrix::identity(2);
    const DenseMatrix y(2, 2, std::vector<cplx>(4, 1.0));
    const auto [x, rep] = solve_general_2d(a1, i2, y);
    const auto v = vec_matrix(x);
    CHECK(std::abs(v[0] - 0.25) <= 1e-13);
    CHECK(std::abs(v[1] - 0.5) <= 1e-13);
    CHECK(std::abs(v[2] - 0.25) <= 1e-13);
    CHECK(std::abs(v[3] - 0.5) <= 1e-13);
}

TEST_CASE("solve_general_2d matches the oracle on non-normal factors") {
    Rng rng(305);
    for (int it = 0; it < 5; ++it) {
        DenseMatrix a1 = random_matrix(rng, 4, 4);
        DenseMatrix a2 = random_matrix(rng, 4, 4);
        for (std::size_t i = 0; i < 4; ++i) {
            a1(i, i) += 3.0;
            a2(i, i) += 3.0;
        }
        const DenseMatrix y = random_matrix(rng, 4, 4);
        const auto [x, rep] = solve_general_2d(a1, a2, y);
        const DenseMatrix xo = oracle::oracle_solve_kron(a1, a2, y);
        CHECK(rel_diff(x, xo) <= 1e-9);
        CHECK(rep.residual <= 1e-9);
        CHECK(rep.terms_used <= 4 + 4 - 1);
        CHECK(rep.term_norms.size() == rep.terms_used);
        CHECK(rep.series_converged);
    }
}

TEST_CASE("solve_general_3d: triangular fast paths and oracle agreement") {
    Rng rng(307);
    // diagonal-only triangular factors collapse the series
    DenseMatrix d1(2, 2), d2(2, 2), d3(2, 2);
    for (std::size_t i = 0; i < 2; ++i) {
        d1(i, i) = 1.0 + static_cast<double>(i);
        d2(i, i) = 2.0 + static_cast<double>(i);
        d3(i, i) = 3.0 + static_cast<double>(i);
    }
    const Tensor3 y = random_tensor(rng, 2, 2, 2);
    const auto [xd, repd] = solve_general_3d(d1, d2, d3, y);
    CHECK(repd.terms_used <= 2);
    for (std::size_t idx = 1; idx < repd.term_norms.size(); ++idx) {
        CHECK(repd.term_norms[idx] <= 1e-14 * repd.term_norms[0]);
    }
    const Tensor3 xo = oracle::oracle_solve_kron(d1, d2, d3, y);
    CHECK(rel_diff(xd, xo) <= 1e-12);

    // random complex factors vs oracle
    for (int it = 0; it < 5; ++it) {
        auto shifted = [&](std::size_t n) {
            DenseMatrix a = random_matrix(rng, n, n);
            for (std::size_t i = 0; i < n; ++i) a(i, i) += 3.0;
            return a;
        };
        const DenseMatrix a1 = shifted(3);
        const DenseMatrix a2 = shifted(3);
        const DenseMatrix a3 = shifted(2);
        const Tensor3 yr = random_tensor(rng, 3, 3, 2);
        const auto [x, rep] = solve_general_3d(a1, a2, a3, yr);
        const Tensor3 xr = oracle::oracle_solve_kron(a1, a2, a3, yr);
        CHECK(rel_diff(x, xr) <= 1e-9);
        CHECK(rep.residual <= 1e-9);
    }
}

TEST_CASE("nilpotency: exact zero terms beyond the index bound") {
    Rng rng(311);
    for (std::size_t n1 = 2; n1 <= 4; ++n1)
        for (std::size_t n2 = 2; n2 <= 4; ++n2) {
            const DenseMatrix t1 = random_upper_triangular(rng, n1, 2.0);
            const DenseMatrix t2 = random_upper_triangular(rng, n2, 2.0);
            const DenseMatrix y = random_matrix(rng, n1, n2);
            SolveOptions opts;
            opts.max_terms = n1 + n2 + 2;
            opts.trace_full_series = true;
            const auto [x, rep] = solve_general_2d(t1, t2, y, opts);
            const std::size_t bound = (n1 - 1) + (n2 - 1) + 1;
            REQUIRE(rep.term_norms.size() >= bound);
            for (std::size_t j = bound; j < rep.term_norms.size(); ++j) {
                CHECK(rep.term_norms[j] <= 1e-13 * rep.term_norms[0]);
            }
        }
}

TEST_CASE("series cap warning is reported, result still returned") {
    Rng rng(313);
    DenseMatrix a1 = random_matrix(rng, 5, 5);
    DenseMatrix a2 = random_matrix(rng, 5, 5);
    for (std::size_t i = 0; i < 5; ++i) {
        a1(i, i) += 3.0;
        a2(i, i) += 3.0;
    }
    const DenseMatrix y = random_matrix(rng, 5, 5);
    SolveOptions opts;
    opts.max_terms = 2;
    const auto [x, rep] = solve_general_2d(a1, a2, y, opts);
    CHECK_FALSE(rep.series_converged);
    CHECK(rep.terms_used == 2);
    CHECK(x.frobenius_norm() > 0.0);
}

TEST_CASE("planted singular spectra raise with the exact witness") {
    Rng rng(317);
    for (int it = 0; it < 20; ++it) {
        const std::size_t n1 = 2 + rng() % 3, n2 = 2 + rng() % 3, n3 = 2 + rng() % 3;
        std::vector<std::vector<cplx>> eigs{{}, {}, {}};
        auto fill = [&](std::vector<cplx>& v, std::size_t n) {
            for (std::size_t i = 0; i < n; ++i) v.push_back(0.5 + std::abs(unit_gaussian(rng)));
        };
        fill(eigs[0], n1);
        fill(eigs[1], n2);
        fill(eigs[2], n3);
        const std::size_t a = rng() % n1, b = rng() % n2, c = rng() % n3;
        eigs[0][a] = -(eigs[1][b] + eigs[2][c]);
        CHECK_THROWS_AS(build_cauchy(eigs), singularity_error);
        try {
            build_cauchy(eigs);
        } catch (const singularity_error& e) {
            CHECK(e.witness() == std::array<std::size_t, 3>{a + 1, b + 1, c + 1});
        }
    }
}

TEST_CASE("lemma: diagonal Kronecker sum times diag(vec C) is the identity") {
    Rng rng(319);
    for (int it = 0; it < 10; ++it) {
        const std::size_t n1 = 1 + rng() % 4, n2 = 1 + rng() % 4, n3 = 1 + rng() % 4;
        std::vector<std::vector<cplx>> eigs(3);
        DenseMatrix l1(n1, n1), l2(n2, n2), l3(n3, n3);
        for (std::size_t i = 0; i < n1; ++i) l1(i, i) = (eigs[0].emplace_back(
            0.5 + std::abs(unit_gaussian(rng))));
        for (std::size_t i = 0; i < n2; ++i) l2(i, i) = (eigs[1].emplace_back(
            0.5 + std::abs(unit_gaussian(rng))));
        for (std::size_t i = 0; i < n3; ++i) l3(i, i) = (eigs[2].emplace_back(
            0.5 + std::abs(unit_gaussian(rng))));
        const CauchyTensor c = build_cauchy(eigs);
        const auto vc = vec_tensor(c.values);
        const DenseMatrix ks = kronecker_sum3(l3, l2, l1);
        for (std::size_t j = 0; j < vc.size(); ++j)
            for (std::size_t i = 0; i < vc.size(); ++i) {
                const cplx v = ks(i, j) * vc[j] - (i == j ? cplx{1.0} : cplx{});
                CHECK(std::abs(v) <= 1e-13);
            }
    }
}

TEST_CASE("nonpositive tolerances are rejected") {
    SolveOptions bad;
    bad.truncation_tol = 0.0;
    CHECK_THROWS_AS(build_cauchy({{1.0}, {2.0}}, bad), precondition_error);
    bad.truncation_tol = 1e-14;
    bad.singularity_tol = -1.0;
    CHECK_THROWS_AS(build_cauchy({{1.0}, {2.0}}, bad), precondition_error);
}

TEST_CASE("report invariants hold across solves") {
    Rng rng(323);
    const DenseMatrix a1 = random_hermitian(rng, 3, 3.0);
    const DenseMatrix a2 = random_hermitian(rng, 3, 3.0);
    const DenseMatrix y = random_matrix(rng, 3, 3);
    const auto [x, rep] = solve_normal_2d(a1, a2, y);
    CHECK(rep.residual >= 0.0);
    CHECK(rep.term_norms.size() == rep.terms_used);
    CHECK(rep.max_abs_cauchy > 0.0);
    CHECK(rep.min_abs_eigsum > 0.0);
    CHECK(rep.max_abs_eigsum >= rep.min_abs_eigsum);
}
