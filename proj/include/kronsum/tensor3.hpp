#pragma once

#include <array>
#include <complex>
#include <cstddef>
#include <vector>

#include "kronsum/dense_matrix.hpp"
#include "kronsum/errors.hpp"

namespace kronsum {

// Dense complex third-order tensor. Entries are stored so that the
// 0-based element (i,j,k) sits at linear index i + j*n1 + k*n1*n2,
// i.e. the first index is fastest. This matches column-major vec():
// the storage of a Tensor3 *is* its vec.
class Tensor3 {
public:
    Tensor3() = default;

    Tensor3(std::size_t n1, std::size_t n2, std::size_t n3);

    // Takes ownership of entries in vec order; rejects NaN/Inf and
    // length mismatches.
    Tensor3(std::size_t n1, std::size_t n2, std::size_t n3, std::vector<cplx> entries);

    std::size_t dim(std::size_t mode) const { return dims_[mode]; }
    const std::array<std::size_t, 3>& dims() const { return dims_; }
    std::size_t size() const { return data_.size(); }

    cplx& operator()(std::size_t i, std::size_t j, std::size_t k) {
        return data_[i + dims_[0] * (j + dims_[1] * k)];
    }
    const cplx& operator()(std::size_t i, std::size_t j, std::size_t k) const {
        return data_[i + dims_[0] * (j + dims_[1] * k)];
    }

    cplx* data() { return data_.data(); }
    const cplx* data() const { return data_.data(); }
    const std::vector<cplx>& entries() const { return data_; }

    double frobenius_norm() const;
    double max_abs() const;

    Tensor3& operator+=(const Tensor3& other);
    Tensor3& operator-=(const Tensor3& other);
    Tensor3& operator*=(cplx scale);

    friend Tensor3 operator+(Tensor3 a, const Tensor3& b) { return a += b; }
    friend Tensor3 operator-(Tensor3 a, const Tensor3& b) { return a -= b; }
    friend Tensor3 operator*(cplx s, Tensor3 a) { return a *= s; }

private:
    std::array<std::size_t, 3> dims_ = {0, 0, 0};
    std::vector<cplx> data_;
};

} // namespace kronsum
