#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>

#include "kronsum/dense_matrix.hpp"
#include "kronsum/tensor3.hpp"

namespace kronsum {

using Rng = std::mt19937_64;

// Standard complex Gaussian (E|z|^2 = 1) via Box-Muller, so streams
// are reproducible across standard library implementations.
inline cplx unit_complex_gaussian(Rng& rng) {
    std::uniform_real_distribution<double> uni(0.0, 1.0);
    double u1 = uni(rng);
    while (u1 <= 0.0) u1 = uni(rng);
    const double u2 = uni(rng);
    const double r = std::sqrt(-std::log(u1));
    const double phi = 2.0 * std::numbers::pi * u2;
    return {r * std::cos(phi), r * std::sin(phi)};
}

inline double unit_gaussian(Rng& rng) {
    std::uniform_real_distribution<double> uni(0.0, 1.0);
    double u1 = uni(rng);
    while (u1 <= 0.0) u1 = uni(rng);
    const double u2 = uni(rng);
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

inline DenseMatrix random_matrix(Rng& rng, std::size_t rows, std::size_t cols) {
    DenseMatrix m(rows, cols);
    for (std::size_t j = 0; j < cols; ++j)
        for (std::size_t i = 0; i < rows; ++i) m(i, j) = unit_complex_gaussian(rng);
    return m;
}

inline Tensor3 random_tensor(Rng& rng, std::size_t n1, std::size_t n2, std::size_t n3) {
    Tensor3 t(n1, n2, n3);
    for (std::size_t p = 0; p < t.size(); ++p) t.data()[p] = unit_complex_gaussian(rng);
    return t;
}

// (G + G*)/2 + shift*I: Hermitian with spectrum centered at `shift`.
inline DenseMatrix random_hermitian(Rng& rng, std::size_t n, double shift = 0.0) {
    DenseMatrix g = random_matrix(rng, n, n);
    DenseMatrix h(n, n);
    for (std::size_t j = 0; j < n; ++j)
        for (std::size_t i = 0; i < n; ++i)
            h(i, j) = 0.5 * (g(i, j) + std::conj(g(j, i)));
    for (std::size_t i = 0; i < n; ++i) h(i, i) += shift;
    return h;
}

// Random upper triangular matrix; diagonal shifted to keep spectra
// away from zero sums.
inline DenseMatrix random_upper_triangular(Rng& rng, std::size_t n, double diag_shift = 0.0) {
    DenseMatrix t(n, n);
    for (std::size_t j = 0; j < n; ++j)
        for (std::size_t i = 0; i <= j; ++i) t(i, j) = unit_complex_gaussian(rng);
    for (std::size_t i = 0; i < n; ++i) t(i, i) += diag_shift;
    return t;
}

} // namespace kronsum
