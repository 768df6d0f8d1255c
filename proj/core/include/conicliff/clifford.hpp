// Even Clifford algebras of twisted ternary quadratic forms, as rank-4
// sheaves of algebras with polynomial structure constants, together with the
// odd rank-4 bimodule and the pointwise verification toolkit.
//
// Bases and conventions, fixed once:
//   Cliff0 basis (1, f12, f13, f23) with sheaf degrees (0, l-a1-a2, l-a1-a3,
//   l-a2-a3); Cliff1 basis (g1, g2, g3, g123) with degrees (-a1, -a2, -a3,
//   l-a1-a2-a3). Inside the rank-8 Clifford algebra with e_i e_j + e_j e_i =
//   2 b(e_i,e_j), the wedge basis is realized as f_ij = e_i e_j - b(i,j) and
//   g123 = e1 e2 e3 - b12 e3 + b13 e2 - b23 e1; for diagonal forms these are
//   the plain words e_i e_j and e1 e2 e3.
//
// The multiplication carries the associative normalization: the products of
// two wedge generators have unit component b(x,w)b(y,z) - b(x,z)b(y,w) and
// wedge component b(y,z) x^w - b(y,w) x^z - b(x,z) y^w + b(x,w) y^z. The
// alternative "literal" normalization doubles the unit component; it
// reproduces the squares -2*a_i*a_j but breaks associativity, and is kept
// only as a documented counterexample mode.
#pragma once

#include "conicliff/quadform.hpp"

namespace conicliff {

struct CliffordError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

enum class MultNormalization { Associative, Literal };

// An element of a rank-4 algebra/module: polynomial coefficient per basis slot.
using AlgebraElement = std::array<HomogeneousPoly, 4>;
using StructureTable = std::array<std::array<AlgebraElement, 4>, 4>;

extern const std::array<const char*, 4> kEvenBasisLabels;   // 1, f12, f13, f23
extern const std::array<const char*, 4> kOddBasisLabels;    // g1, g2, g3, g123

struct EvenCliffordAlgebra {
    SplitTwist twist;
    Field field;
    std::array<int, 4> summand_degrees;
    StructureTable product;              // product[i][j] = basis_i * basis_j
    MultNormalization normalization = MultNormalization::Associative;

    std::uint32_t nvars() const { return twist.nvars(); }
    AlgebraElement multiply(const AlgebraElement& x, const AlgebraElement& y) const;
    AlgebraElement basis_element(std::size_t i) const;
    AlgebraElement zero_element() const;
};

struct OddCliffordModule {
    SplitTwist twist;
    Field field;
    std::array<int, 4> summand_degrees;
    StructureTable left_action;          // Cliff0 x Cliff1 -> Cliff1
    StructureTable right_action;         // Cliff1 x Cliff0 -> Cliff1
    // Cliff1 x Cliff1 -> Cliff2; Cliff2 is Cliff0 with degrees shifted by -l.
    StructureTable pairing;
};

enum class FiberAlgebraClass { Matrix2, QuiverPath, Exterior2 };

std::string fiber_algebra_class_name(FiberAlgebraClass c);

EvenCliffordAlgebra cliff0(const TwistedQuadraticForm& q,
                           MultNormalization norm = MultNormalization::Associative);
OddCliffordModule cliff_odd(const TwistedQuadraticForm& q);

// Exact polynomial identity checks.
// verify_even_structure: unit laws, degree bookkeeping, and that every
// commutator of basis elements has zero unit component.
Report verify_even_structure(const EvenCliffordAlgebra& a);
// All 64 basis triples of (u*v)*w = u*(v*w); failures list both sides.
Report verify_associativity(const EvenCliffordAlgebra& a);
// Module axioms for the odd bimodule against the even product:
// (u*v)*m = u*(v*m), (m*u)*v = m*(u*v), (u*m)*v = u*(m*v), and the pairing
// is Cliff0-balanced: (m*u)*m' = m*(u*m').
Report verify_module_axioms(const EvenCliffordAlgebra& a, const OddCliffordModule& m);

// A 4-dimensional algebra obtained by evaluating structure constants.
struct EvaluatedAlgebra {
    Field field;
    std::array<std::array<std::array<Scalar, 4>, 4>, 4> table;
};

EvaluatedAlgebra evaluate_algebra(const StructureTable& table, const Field& field,
                                  std::span<const Scalar> point);

// Radical dimension of the evaluated algebra via the trace form tr(L_x L_y);
// valid in characteristic 0 and for p > 4.
std::size_t radical_dimension(const EvaluatedAlgebra& a);

// rad 0 -> Matrix2, rad 2 -> QuiverPath, rad 3 -> Exterior2.
// Radical dimension 1 is impossible for a pointwise Clifford fiber; throws.
FiberAlgebraClass classify_evaluated_algebra(const EvaluatedAlgebra& a);
FiberAlgebraClass classify_fiber_algebra(const EvenCliffordAlgebra& a,
                                         std::span<const Scalar> point);

// Fiberwise check of Cliff_i x_{Cliff0} Cliff_j = Cliff_{i+j} at a
// nondegenerate point: the balanced tensor product must have dimension 4 and
// the multiplication-induced map must be invertible. Degenerate points yield
// an error report carrying the measured dimension.
enum class ParityPair { OddOdd, OddEven, EvenOdd };
Report verify_bimodule_tensor_at(const TwistedQuadraticForm& q,
                                 std::span<const Scalar> point, ParityPair pair);

// Degree-shift by an even Clifford index: Cliff_{i+shift} from Cliff_i.
// Summand degrees change by -(shift/2)*l; structure constants are reused.
EvenCliffordAlgebra cliff_shift(const EvenCliffordAlgebra& a, int index_shift);
OddCliffordModule cliff_shift(const OddCliffordModule& m, int index_shift);

}  // namespace conicliff
