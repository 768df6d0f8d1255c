#include "conicliff/poly_matrix.hpp"

namespace conicliff {

PolyMatrix::PolyMatrix(std::size_t rows, std::size_t cols, Field field, std::uint32_t nvars)
    : rows_(rows), cols_(cols), field_(field), nvars_(nvars),
      entries_(rows * cols, HomogeneousPoly::zero(field, nvars)) {}

bool PolyMatrix::is_symmetric() const {
    if (rows_ != cols_) return false;
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = i + 1; j < cols_; ++j)
            if (at(i, j) != at(j, i)) return false;
    return true;
}

bool PolyMatrix::is_zero() const {
    for (const auto& e : entries_)
        if (!e.is_zero()) return false;
    return true;
}

void PolyMatrix::set_symmetric() {
    if (!is_symmetric()) throw PolyError("matrix is not symmetric");
    symmetric_ = true;
}

ScalarMatrix PolyMatrix::eval(std::span<const Scalar> point) const {
    ScalarMatrix m(rows_, cols_, field_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j)
            m.at(i, j) = at(i, j).eval(point);
    return m;
}

std::size_t PolyMatrix::rank_at(std::span<const Scalar> point) const {
    return eval(point).rank();
}

PolyMatrix PolyMatrix::congruent(const ScalarMatrix& g) const {
    if (rows_ != cols_ || g.rows() != rows_ || g.cols() != rows_)
        throw PolyError("congruence shape mismatch");
    PolyMatrix out(rows_, cols_, field_, nvars_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) {
            HomogeneousPoly acc = HomogeneousPoly::zero(field_, nvars_);
            for (std::size_t u = 0; u < rows_; ++u)
                for (std::size_t v = 0; v < cols_; ++v)
                    acc += at(u, v).scaled(g.at(u, i) * g.at(v, j));
            out.at(i, j) = acc;
        }
    return out;
}

PolyMatrix PolyMatrix::diagonal(const std::vector<HomogeneousPoly>& diag) {
    if (diag.empty()) throw PolyError("empty diagonal");
    PolyMatrix m(diag.size(), diag.size(), diag[0].field(), diag[0].nvars());
    for (std::size_t i = 0; i < diag.size(); ++i) m.at(i, i) = diag[i];
    return m;
}

HomogeneousPoly det3(const PolyMatrix& m) {
    if (m.rows() != 3 || m.cols() != 3) throw PolyError("det3 needs a 3x3 matrix");
    auto minor = [&](std::size_t c1, std::size_t c2) {
        return m.at(1, c1) * m.at(2, c2) - m.at(1, c2) * m.at(2, c1);
    };
    try {
        HomogeneousPoly acc = m.at(0, 0) * minor(1, 2);
        acc -= m.at(0, 1) * minor(0, 2);
        acc += m.at(0, 2) * minor(0, 1);
        return acc;
    } catch (const PolyError& e) {
        throw PolyError(std::string("degree-inconsistent matrix in det3: ") + e.what());
    }
}

}  // namespace conicliff
