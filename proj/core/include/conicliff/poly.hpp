// Sparse homogeneous multivariate polynomials over an exact field.
// Carriers for sections of O(d) on P^n: nvars = n+1, every stored monomial
// has total degree exactly d. The zero polynomial is distinguished
// (empty support, degree() == -1).
#pragma once

#include <cstdint>
#include <map>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "conicliff/field.hpp"

namespace conicliff {

struct PolyError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

using Monomial = std::vector<std::uint32_t>;   // exponent per variable

inline std::uint32_t monomial_degree(const Monomial& m) {
    std::uint32_t d = 0;
    for (auto e : m) d += e;
    return d;
}

// Graded lexicographic: lower degree first, then lex on exponents.
// The global order behind every canonical serialization.
struct GrlexLess {
    bool operator()(const Monomial& a, const Monomial& b) const {
        const std::uint32_t da = monomial_degree(a), db = monomial_degree(b);
        if (da != db) return da < db;
        return a < b;   // lexicographic on exponent vectors
    }
};

class HomogeneousPoly {
public:
    // Zero polynomial in nvars variables.
    HomogeneousPoly(Field field, std::uint32_t nvars);
    // Container-friendly default: the rational zero polynomial in one variable.
    HomogeneousPoly() : HomogeneousPoly(Field::rationals(), 1) {}

    static HomogeneousPoly zero(Field field, std::uint32_t nvars);
    static HomogeneousPoly constant(const Scalar& c, std::uint32_t nvars);
    static HomogeneousPoly variable(std::uint32_t i, std::uint32_t nvars, Field field);
    static HomogeneousPoly monomial(const Scalar& c, Monomial m);

    const Field& field() const { return field_; }
    std::uint32_t nvars() const { return nvars_; }
    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const;
    // Total degree; -1 for the zero polynomial.
    int degree() const { return terms_.empty() ? -1 : degree_; }
    std::size_t term_count() const { return terms_.size(); }
    const std::map<Monomial, Scalar, GrlexLess>& terms() const { return terms_; }

    // Leading term in the global graded-lex order.
    const Monomial& leading_monomial() const;
    const Scalar& leading_coefficient() const;
    Scalar coefficient(const Monomial& m) const;   // zero scalar if absent

    HomogeneousPoly operator-() const;
    // Adding nonzero polynomials of unequal degree is an error.
    HomogeneousPoly operator+(const HomogeneousPoly& o) const;
    HomogeneousPoly operator-(const HomogeneousPoly& o) const;
    HomogeneousPoly operator*(const HomogeneousPoly& o) const;
    HomogeneousPoly scaled(const Scalar& c) const;

    HomogeneousPoly& operator+=(const HomogeneousPoly& o) { return *this = *this + o; }
    HomogeneousPoly& operator-=(const HomogeneousPoly& o) { return *this = *this - o; }
    HomogeneousPoly& operator*=(const HomogeneousPoly& o) { return *this = *this * o; }

    bool operator==(const HomogeneousPoly& o) const;
    bool operator!=(const HomogeneousPoly& o) const { return !(*this == o); }

    Scalar eval(std::span<const Scalar> point) const;
    HomogeneousPoly derivative(std::uint32_t var) const;

    // Canonical text form, graded-lex descending: "3*x0^2 - x1*x2", "0".
    std::string to_string() const;

    // q/r with f = q*divisor + r termwise in graded-lex order. divide_exact
    // throws if the remainder is nonzero.
    HomogeneousPoly divide_exact(const HomogeneousPoly& divisor) const;
    bool divisible_by(const HomogeneousPoly& divisor) const;

    // Dense random polynomial of the given degree (coefficients may be zero;
    // resamples once if everything vanished and nonzero was requested).
    static HomogeneousPoly random(Field field, std::uint32_t nvars, std::uint32_t degree,
                                  std::mt19937_64& rng, bool require_nonzero = false);

    // All exponent vectors of total degree d in nvars variables, grlex order.
    static std::vector<Monomial> monomial_basis(std::uint32_t nvars, std::uint32_t degree);

private:
    void insert_term(const Monomial& m, const Scalar& c);

    Field field_;
    std::uint32_t nvars_;
    std::uint32_t degree_ = 0;   // meaningful only when terms_ nonempty
    std::map<Monomial, Scalar, GrlexLess> terms_;
};

// Parses the shared polynomial grammar: variables x0..xN, integer
// coefficients, operators + - * ^. Rejects non-homogeneous input with the
// offending monomial named, and variables beyond nvars.
HomogeneousPoly parse_poly(const std::string& text, Field field, std::uint32_t nvars);

}  // namespace conicliff
