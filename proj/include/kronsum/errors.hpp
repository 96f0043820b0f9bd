#pragma once

#include <array>
#include <cstddef>
#include <stdexcept>
#include <string>

namespace kronsum {

// Base class for all library errors.
class error : public std::runtime_error {
public:
    explicit error(const std::string& what) : std::runtime_error(what) {}
};

// Shape or size mismatch between operands.
class dimension_error : public error {
public:
    explicit dimension_error(const std::string& what) : error(what) {}
};

// Input violates a documented precondition (e.g. non-Hermitian matrix
// passed to the Hermitian eigensolver).
class precondition_error : public error {
public:
    explicit precondition_error(const std::string& what) : error(what) {}
};

// Some eigenvalue combination sums to (numerical) zero, so the
// Kronecker-sum system is singular. Witness indices are 1-based; the
// third index is 0 for two-factor systems.
class singularity_error : public error {
public:
    singularity_error(const std::string& what, std::array<std::size_t, 3> witness)
        : error(what), witness_(witness) {}
    const std::array<std::size_t, 3>& witness() const { return witness_; }

private:
    std::array<std::size_t, 3> witness_;
};

// Iterative factorization failed to converge within its sweep cap.
class convergence_error : public error {
public:
    convergence_error(const std::string& what, std::size_t stuck_index)
        : error(what), stuck_index_(stuck_index) {}
    // Index of the subdiagonal entry that refused to deflate.
    std::size_t stuck_index() const { return stuck_index_; }

private:
    std::size_t stuck_index_;
};

// Pivot below the working-precision threshold during elimination.
class singular_matrix_error : public error {
public:
    explicit singular_matrix_error(const std::string& what) : error(what) {}
};

// Request exceeds a hard size guard (e.g. materializing an oversized
// Kronecker sum in the oracle).
class capacity_error : public error {
public:
    explicit capacity_error(const std::string& what) : error(what) {}
};

// A metric is undefined for the given inputs (e.g. relative error
// against an identically-zero reference field).
class metric_error : public error {
public:
    explicit metric_error(const std::string& what) : error(what) {}
};

} // namespace kronsum
