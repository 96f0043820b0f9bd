#pragma once

#include <complex>
#include <cstddef>
#include <vector>

#include "kronsum/errors.hpp"

namespace kronsum {

using cplx = std::complex<double>;

// Dense complex matrix, column-major: element (i,j) lives at i + j*rows.
// The column-major layout doubles as the vec() of the matrix.
class DenseMatrix {
public:
    DenseMatrix() = default;

    // Zero matrix of the given shape.
    DenseMatrix(std::size_t rows, std::size_t cols);

    // Takes ownership of column-major entries; rejects NaN/Inf and
    // length mismatches.
    DenseMatrix(std::size_t rows, std::size_t cols, std::vector<cplx> entries);

    static DenseMatrix identity(std::size_t n);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    std::size_t size() const { return data_.size(); }
    bool is_square() const { return rows_ == cols_; }

    cplx& operator()(std::size_t i, std::size_t j) { return data_[i + j * rows_]; }
    const cplx& operator()(std::size_t i, std::size_t j) const { return data_[i + j * rows_]; }

    cplx* data() { return data_.data(); }
    const cplx* data() const { return data_.data(); }
    cplx* col(std::size_t j) { return data_.data() + j * rows_; }
    const cplx* col(std::size_t j) const { return data_.data() + j * rows_; }

    const std::vector<cplx>& entries() const { return data_; }

    DenseMatrix transpose() const;
    DenseMatrix conjugate() const;
    DenseMatrix adjoint() const;

    double frobenius_norm() const;
    double max_abs() const;

    DenseMatrix& operator+=(const DenseMatrix& other);
    DenseMatrix& operator-=(const DenseMatrix& other);
    DenseMatrix& operator*=(cplx scale);

    friend DenseMatrix operator+(DenseMatrix a, const DenseMatrix& b) { return a += b; }
    friend DenseMatrix operator-(DenseMatrix a, const DenseMatrix& b) { return a -= b; }
    friend DenseMatrix operator*(cplx s, DenseMatrix a) { return a *= s; }

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<cplx> data_;
};

} // namespace kronsum
