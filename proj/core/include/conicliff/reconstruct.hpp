// The algebra-to-form direction: given a rank-4 algebra with a unit splitting
// O + R0, recover a twisted quadratic form from the commutator map on R0,
// certify the symmetric factorization exactly, and verify the roundtrip
// against the normalized twist.
//
// Conventions, fixed once: R0 basis (r1, r2, r3); the commutator map is
// transported through wedge^2 R0 = det(R0) (x) R0^dual by r1^r2 <-> +r3^dual,
// r1^r3 <-> -r2^dual, r2^r3 <-> +r1^dual. For R = cliff0(q) (with r_i the
// wedge generators f12, f13, f23 in that order) this yields the reconstructed
// matrix Q(m,k) = -2 (-1)^{m+k} M(s(m), s(k)) with s the index reversal, so
// Q = c G^T M G for the constant c = -2 and G = reversal times alternating
// signs, and det Q = -8 det M.
#pragma once

#include <optional>

#include "conicliff/clifford.hpp"

namespace conicliff {

struct ReconstructError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct AlgebraWithSplitting {
    Field field;
    std::uint32_t nvars = 1;
    std::array<int, 4> summand_degrees{0, 0, 0, 0};   // unit first, then R0
    StructureTable product;
    // Set when the algebra came out of cliff0; user-supplied dumps leave it empty.
    std::optional<SplitTwist> source_twist;

    std::uint32_t base_dim() const { return nvars - 1; }
};

AlgebraWithSplitting splitting_from_cliff0(const EvenCliffordAlgebra& a);

// Structural invariants: unit laws, degree bookkeeping, and the commutator
// subsheaf condition [R,R] inside R0 as exact polynomial identities.
Report validate_splitting(const AlgebraWithSplitting& r);

// Coefficient of r_m in [r_i, r_j], rows indexed by the wedge pairs
// (1,2), (1,3), (2,3).
struct CommutatorMap {
    Field field;
    std::uint32_t nvars;
    std::array<std::array<HomogeneousPoly, 3>, 3> coeff;   // [pair][target]

    HomogeneousPoly det() const;
};

// Throws ReconstructError when some commutator has a nonzero unit component.
CommutatorMap commutator_map(const AlgebraWithSplitting& r);

struct ReconstructionResult {
    Report report;
    std::optional<TwistedQuadraticForm> form;   // present iff report passed
};

// Transports the commutator map through the fixed sign convention, requires
// exact symmetry, and packages the result with twist a'_i = d_i,
// l' = d1+d2+d3. Failures (asymmetry with its defect matrix, vanishing
// commutators, bad degrees) are report findings.
ReconstructionResult reconstruct_form(const AlgebraWithSplitting& r);

// reconstruct_form(cliff0(q)) against normalized_twist(q): identical twist
// data up to the built-in index reversal, exact congruence with c = -2, and
// the determinant law det q_R = -8 det q.
Report roundtrip_check(const TwistedQuadraticForm& q);

// Definition check by sampling: reconstruction must succeed exactly, and at
// sampled points the evaluated algebra must have the same fiber class as the
// even Clifford algebra of the reconstructed form.
Report is_pointwise_clifford(const AlgebraWithSplitting& r, std::uint32_t sample_count,
                             std::uint64_t seed);

}  // namespace conicliff
