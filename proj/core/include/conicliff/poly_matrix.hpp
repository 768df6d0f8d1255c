// Matrices of homogeneous polynomials, exact determinants and fiber ranks.
#pragma once

#include <optional>
#include <span>
#include <vector>

#include "conicliff/linalg.hpp"
#include "conicliff/poly.hpp"

namespace conicliff {

class PolyMatrix {
public:
    PolyMatrix(std::size_t rows, std::size_t cols, Field field, std::uint32_t nvars);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    const Field& field() const { return field_; }
    std::uint32_t nvars() const { return nvars_; }

    HomogeneousPoly& at(std::size_t i, std::size_t j) { return entries_[i * cols_ + j]; }
    const HomogeneousPoly& at(std::size_t i, std::size_t j) const {
        return entries_[i * cols_ + j];
    }

    bool is_symmetric() const;
    bool is_zero() const;
    // Declares symmetry; throws if the entries disagree coefficientwise.
    void set_symmetric();
    bool symmetric_flag() const { return symmetric_; }

    ScalarMatrix eval(std::span<const Scalar> point) const;
    std::size_t rank_at(std::span<const Scalar> point) const;

    // Congruence G^T M G for a constant matrix G.
    PolyMatrix congruent(const ScalarMatrix& g) const;

    static PolyMatrix diagonal(const std::vector<HomogeneousPoly>& diag);

private:
    std::size_t rows_, cols_;
    Field field_;
    std::uint32_t nvars_;
    bool symmetric_ = false;
    std::vector<HomogeneousPoly> entries_;
};

// Exact cofactor-expansion determinant of a 3x3 polynomial matrix. Throws if
// the six expansion products have inconsistent nonzero degrees.
HomogeneousPoly det3(const PolyMatrix& m);

}  // namespace conicliff
