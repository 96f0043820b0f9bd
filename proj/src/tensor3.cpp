#include "kronsum/tensor3.hpp"

#include <cmath>
#include <utility>

#include "kronsum/kernels.hpp"

namespace kronsum {

Tensor3::Tensor3(std::size_t n1, std::size_t n2, std::size_t n3)
    : dims_{n1, n2, n3}, data_(n1 * n2 * n3) {}

Tensor3::Tensor3(std::size_t n1, std::size_t n2, std::size_t n3, std::vector<cplx> entries)
    : dims_{n1, n2, n3}, data_(std::move(entries)) {
    if (data_.size() != n1 * n2 * n3) {
        throw dimension_error("entry count does not match n1*n2*n3");
    }
    for (const cplx& z : data_) {
        if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
            throw precondition_error("tensor entries must be finite");
        }
    }
}

double Tensor3::frobenius_norm() const {
    return std::sqrt(kernels::active().norm_sq(data_.size(), data_.data()));
}

double Tensor3::max_abs() const {
    double m = 0.0;
    for (const cplx& z : data_) m = std::max(m, std::abs(z));
    return m;
}

Tensor3& Tensor3::operator+=(const Tensor3& other) {
    if (dims_ != other.dims_) throw dimension_error("tensor shapes differ in addition");
    kernels::active().axpy(data_.size(), 1.0, other.data_.data(), data_.data());
    return *this;
}

Tensor3& Tensor3::operator-=(const Tensor3& other) {
    if (dims_ != other.dims_) throw dimension_error("tensor shapes differ in subtraction");
    kernels::active().axpy(data_.size(), -1.0, other.data_.data(), data_.data());
    return *this;
}

Tensor3& Tensor3::operator*=(cplx scale) {
    for (cplx& z : data_) z *= scale;
    return *this;
}

} // namespace kronsum
