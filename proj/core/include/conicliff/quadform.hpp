// Twisted ternary quadratic forms on split bundles over P^n.
//
// Split convention: E = O(-a1) + O(-a2) + O(-a3), L = O(l). A form is a
// symmetric 3x3 matrix M with entry (i,j) homogeneous of degree a_i+a_j-l;
// slots whose prescribed degree is negative must hold the zero polynomial.
#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <random>

#include "conicliff/poly_matrix.hpp"
#include "conicliff/report.hpp"

namespace conicliff {

struct FormError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct SplitTwist {
    std::uint32_t base_dim = 0;          // n of P^n
    std::array<int, 3> a{0, 0, 0};       // degrees of the summands of E^dual
    int l = 0;                           // L = O(l)

    std::uint32_t nvars() const { return base_dim + 1; }
    int sum_a() const { return a[0] + a[1] + a[2]; }
    int entry_degree(std::size_t i, std::size_t j) const {
        return a[i] + a[j] - l;
    }
    bool operator==(const SplitTwist& o) const = default;
};

enum class FiberClass { SmoothConic, LinePair, DoubleLine };

std::string fiber_class_name(FiberClass c);

class TwistedQuadraticForm {
public:
    // Validates symmetry, the degree pattern and non-zero-ness; throws
    // FormError with the combined violations on failure.
    static TwistedQuadraticForm make(const SplitTwist& twist, PolyMatrix m);

    const SplitTwist& twist() const { return twist_; }
    const PolyMatrix& matrix() const { return m_; }
    const Field& field() const { return m_.field(); }

private:
    TwistedQuadraticForm(SplitTwist t, PolyMatrix m) : twist_(t), m_(std::move(m)) {}
    SplitTwist twist_;
    PolyMatrix m_;
};

// Report-producing well-formedness check; violations are findings, not throws.
Report validate_form(const SplitTwist& twist, const PolyMatrix& m);

// det3 of the matrix. Zero output is legal (degenerate family); callers flag it.
HomogeneousPoly discriminant(const TwistedQuadraticForm& q);
// 2*(a1+a2+a3) - 3l, the degree of a nonzero discriminant.
int expected_discriminant_degree(const SplitTwist& twist);

// Exact rank of the fiber form at a point of P^n, with its conic class.
// Rank 0 violates the nowhere-vanishing hypothesis and throws.
std::pair<int, FiberClass> fiber_rank(const TwistedQuadraticForm& q,
                                      std::span<const Scalar> point);

// The unique twist with L' = det(E')^dual: a'_i = a_i + (l - sum a),
// l' = 3l - 2*sum a. The matrix is reused unchanged; idempotent on twists.
TwistedQuadraticForm normalized_twist(const TwistedQuadraticForm& q);

struct MonteCarloParams {
    std::uint32_t samples = 200;
    std::uint64_t seed = 1;
    // Prime for sampling when the form lives over Q; Fp forms use their own.
    std::uint32_t reduction_prime = kDefaultPrime;
};

// Probabilistic common-zero search for the six entries over F_p, F_{p^2} and
// F_{p^3} points of P^n. Pass means "probabilistically nonvanishing".
Report nowhere_vanishing_montecarlo(const TwistedQuadraticForm& q,
                                    const MonteCarloParams& params);

// Exact check on P^1 only: the entries have a common zero iff their gcd is
// nonconstant. Errors (in the report) when base_dim != 1.
Report nowhere_vanishing_exact_p1(const TwistedQuadraticForm& q);

// Pointwise conic equivalence: geometric verdict from fiber ranks; over Q a
// rank-3 pair additionally gets a square-class refinement finding that never
// affects the verdict.
Report equivalent_conics_at(const TwistedQuadraticForm& q1, const TwistedQuadraticForm& q2,
                            std::span<const Scalar> point);

// Uniformly random point of P^n(F_p) (first nonzero coordinate scaled to 1);
// over Q, small random integers, not all zero.
std::vector<Scalar> random_projective_point(const Field& field, std::uint32_t nvars,
                                            std::mt19937_64& rng);

}  // namespace conicliff
