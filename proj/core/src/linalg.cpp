#include "conicliff/linalg.hpp"

namespace conicliff {

ScalarMatrix::ScalarMatrix(std::size_t rows, std::size_t cols, const Field& field)
    : rows_(rows), cols_(cols), field_(field), data_(rows * cols, Scalar::zero(field)) {}

ScalarMatrix ScalarMatrix::identity(std::size_t n, const Field& field) {
    ScalarMatrix m(n, n, field);
    for (std::size_t i = 0; i < n; ++i) m.at(i, i) = Scalar::one(field);
    return m;
}

namespace {

// Row echelon in place; returns rank and records pivot columns.
std::size_t echelon(std::vector<Scalar>& a, std::size_t rows, std::size_t cols,
                    std::vector<std::size_t>* pivots) {
    auto at = [&](std::size_t i, std::size_t j) -> Scalar& { return a[i * cols + j]; };
    std::size_t rank = 0;
    for (std::size_t col = 0; col < cols && rank < rows; ++col) {
        std::size_t piv = rank;
        while (piv < rows && at(piv, col).is_zero()) ++piv;
        if (piv == rows) continue;
        if (piv != rank)
            for (std::size_t j = 0; j < cols; ++j) std::swap(at(piv, j), at(rank, j));
        const Scalar inv = at(rank, col).inverse();
        for (std::size_t j = col; j < cols; ++j) at(rank, j) *= inv;
        for (std::size_t i = 0; i < rows; ++i) {
            if (i == rank || at(i, col).is_zero()) continue;
            const Scalar f = at(i, col);
            for (std::size_t j = col; j < cols; ++j)
                at(i, j) -= f * at(rank, j);
        }
        if (pivots) pivots->push_back(col);
        ++rank;
    }
    return rank;
}

}  // namespace

std::size_t ScalarMatrix::rank() const {
    std::vector<Scalar> a = data_;
    return echelon(a, rows_, cols_, nullptr);
}

Scalar ScalarMatrix::det() const {
    if (rows_ != cols_) throw FieldError("determinant of non-square matrix");
    std::vector<Scalar> a = data_;
    auto at = [&](std::size_t i, std::size_t j) -> Scalar& { return a[i * cols_ + j]; };
    Scalar d = Scalar::one(field_);
    for (std::size_t col = 0; col < cols_; ++col) {
        std::size_t piv = col;
        while (piv < rows_ && at(piv, col).is_zero()) ++piv;
        if (piv == rows_) return Scalar::zero(field_);
        if (piv != col) {
            for (std::size_t j = 0; j < cols_; ++j) std::swap(at(piv, j), at(col, j));
            d = -d;
        }
        d *= at(col, col);
        const Scalar inv = at(col, col).inverse();
        for (std::size_t i = col + 1; i < rows_; ++i) {
            if (at(i, col).is_zero()) continue;
            const Scalar f = at(i, col) * inv;
            for (std::size_t j = col; j < cols_; ++j)
                at(i, j) -= f * at(col, j);
        }
    }
    return d;
}

std::vector<std::vector<Scalar>> ScalarMatrix::kernel_basis() const {
    std::vector<Scalar> a = data_;
    std::vector<std::size_t> pivots;
    echelon(a, rows_, cols_, &pivots);
    auto at = [&](std::size_t i, std::size_t j) -> const Scalar& { return a[i * cols_ + j]; };

    std::vector<bool> is_pivot(cols_, false);
    for (auto c : pivots) is_pivot[c] = true;

    std::vector<std::vector<Scalar>> basis;
    for (std::size_t free = 0; free < cols_; ++free) {
        if (is_pivot[free]) continue;
        std::vector<Scalar> v(cols_, Scalar::zero(field_));
        v[free] = Scalar::one(field_);
        for (std::size_t r = 0; r < pivots.size(); ++r)
            v[pivots[r]] = -at(r, free);
        basis.push_back(std::move(v));
    }
    return basis;
}

}  // namespace conicliff
