// Brute-force construction of the full 8-dimensional Clifford algebra of a
// scalar Gram matrix by word rewriting: e_i e_j -> 2 b(i,j) - e_j e_i for
// i < j and e_i e_i -> b(i,i). Serves as the independent oracle for every
// structure constant produced by the contraction formulas in clifford.cpp;
// it must not share code with them.
#pragma once

#include <array>

#include "conicliff/clifford.hpp"
#include "conicliff/linalg.hpp"

namespace conicliff {

// Basis words e_S indexed by subset bitmask (bit i = generator e_{i+1});
// ascending letter order inside a word.
class CliffordWordAlgebra {
public:
    using Element = std::array<Scalar, 8>;

    // gram must be symmetric 3x3.
    static CliffordWordAlgebra build(const ScalarMatrix& gram);

    const Field& field() const { return field_; }
    const Scalar& gram(std::size_t i, std::size_t j) const { return gram_[i][j]; }

    // Full multiplication table: product of basis words S and T.
    const Element& word_product(std::size_t s, std::size_t t) const { return table_[s][t]; }

    Element multiply(const Element& x, const Element& y) const;

    // Even subalgebra table over the word basis (e_{}, e12, e13, e23).
    std::array<std::array<std::array<Scalar, 4>, 4>, 4> even_word_table() const;

    // Structure constants over the wedge bases, for direct comparison with
    // cliff0 / cliff_odd evaluated at the same point:
    //   even (1, f12, f13, f23) with f_ij = e_i e_j - b(i,j),
    //   odd  (g1, g2, g3, g123) with g123 = e1 e2 e3 - b12 e3 + b13 e2 - b23 e1.
    struct WedgeTables {
        std::array<std::array<std::array<Scalar, 4>, 4>, 4> even;
        std::array<std::array<std::array<Scalar, 4>, 4>, 4> left;      // even x odd
        std::array<std::array<std::array<Scalar, 4>, 4>, 4> right;     // odd x even
        std::array<std::array<std::array<Scalar, 4>, 4>, 4> pairing;   // odd x odd
    };
    WedgeTables wedge_tables() const;

private:
    explicit CliffordWordAlgebra(const Field& f) : field_(f) {}
    Element mul_word_generator(std::size_t subset, std::size_t gen) const;

    Field field_ = Field::rationals();
    std::array<std::array<Scalar, 3>, 3> gram_;
    std::array<std::array<Element, 8>, 8> table_;
};

// Convenience: the oracle for a form evaluated at a point of its base.
CliffordWordAlgebra straightening_oracle(const TwistedQuadraticForm& q,
                                         std::span<const Scalar> point);

}  // namespace conicliff
