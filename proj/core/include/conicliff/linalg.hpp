// Exact dense linear algebra over Scalar, used for fiber ranks, radical
// computations and the pointwise tensor checks. Sizes stay tiny (<= 64).
#pragma once

#include <vector>

#include "conicliff/field.hpp"

namespace conicliff {

class ScalarMatrix {
public:
    ScalarMatrix(std::size_t rows, std::size_t cols, const Field& field);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    const Field& field() const { return field_; }

    Scalar& at(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const Scalar& at(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    std::size_t rank() const;
    Scalar det() const;   // square only

    // Basis of the right kernel {v : Mv = 0}.
    std::vector<std::vector<Scalar>> kernel_basis() const;

    static ScalarMatrix identity(std::size_t n, const Field& field);

private:
    std::size_t rows_, cols_;
    Field field_;
    std::vector<Scalar> data_;
};

}  // namespace conicliff
