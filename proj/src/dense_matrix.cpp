#include "kronsum/dense_matrix.hpp"

#include <cmath>
#include <utility>

#include "kronsum/kernels.hpp"

namespace kronsum {
namespace {

void check_finite(const std::vector<cplx>& entries) {
    for (const cplx& z : entries) {
        if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
            throw precondition_error("matrix entries must be finite");
        }
    }
}

} // namespace

DenseMatrix::DenseMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows * cols) {}

DenseMatrix::DenseMatrix(std::size_t rows, std::size_t cols, std::vector<cplx> entries)
    : rows_(rows), cols_(cols), data_(std::move(entries)) {
    if (data_.size() != rows_ * cols_) {
        throw dimension_error("entry count does not match rows*cols");
    }
    check_finite(data_);
}

DenseMatrix DenseMatrix::identity(std::size_t n) {
    DenseMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
}

DenseMatrix DenseMatrix::transpose() const {
    DenseMatrix r(cols_, rows_);
    for (std::size_t j = 0; j < cols_; ++j)
        for (std::size_t i = 0; i < rows_; ++i) r(j, i) = (*this)(i, j);
    return r;
}

DenseMatrix DenseMatrix::conjugate() const {
    DenseMatrix r(rows_, cols_);
    for (std::size_t p = 0; p < data_.size(); ++p) r.data_[p] = std::conj(data_[p]);
    return r;
}

DenseMatrix DenseMatrix::adjoint() const {
    DenseMatrix r(cols_, rows_);
    for (std::size_t j = 0; j < cols_; ++j)
        for (std::size_t i = 0; i < rows_; ++i) r(j, i) = std::conj((*this)(i, j));
    return r;
}

double DenseMatrix::frobenius_norm() const {
    return std::sqrt(kernels::active().norm_sq(data_.size(), data_.data()));
}

double DenseMatrix::max_abs() const {
    double m = 0.0;
    for (const cplx& z : data_) m = std::max(m, std::abs(z));
    return m;
}

DenseMatrix& DenseMatrix::operator+=(const DenseMatrix& other) {
    if (rows_ != other.rows_ || cols_ != other.cols_) {
        throw dimension_error("matrix shapes differ in addition");
    }
    kernels::active().axpy(data_.size(), 1.0, other.data_.data(), data_.data());
    return *this;
}

DenseMatrix& DenseMatrix::operator-=(const DenseMatrix& other) {
    if (rows_ != other.rows_ || cols_ != other.cols_) {
        throw dimension_error("matrix shapes differ in subtraction");
    }
    kernels::active().axpy(data_.size(), -1.0, other.data_.data(), data_.data());
    return *this;
}

DenseMatrix& DenseMatrix::operator*=(cplx scale) {
    for (cplx& z : data_) z *= scale;
    return *this;
}

} // namespace kronsum
