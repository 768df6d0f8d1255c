// Exact coefficient fields: arbitrary-precision rationals and prime fields
// F_p with p an odd prime. Every operation is exact; division by zero throws.
#pragma once

#include <cstdint>
#include <memory>
#include <random>
#include <stdexcept>
#include <string>
#include <variant>

#include <gmpxx.h>

namespace conicliff {

struct FieldError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Field descriptor. kind Q has p() == 0.
class Field {
public:
    enum class Kind { Rational, Prime };

    static Field rationals() { return Field(Kind::Rational, 0); }
    static Field prime(std::uint32_t p);   // throws unless p is an odd prime

    Kind kind() const { return kind_; }
    std::uint32_t p() const { return p_; }
    bool is_rational() const { return kind_ == Kind::Rational; }

    bool operator==(const Field& o) const { return kind_ == o.kind_ && p_ == o.p_; }
    bool operator!=(const Field& o) const { return !(*this == o); }

    // "Q" or "Fp:<p>"; parse accepts the same two spellings.
    std::string name() const;
    static Field parse(const std::string& name);

private:
    Field(Kind k, std::uint32_t p) : kind_(k), p_(p) {}
    Kind kind_;
    std::uint32_t p_;
};

// Default prime for probabilistic checks and F_p property tests.
inline constexpr std::uint32_t kDefaultPrime = 10007;

// An exact field element. Self-describing: F_p values carry their modulus,
// so mixed-field arithmetic can be rejected instead of silently coerced.
class Scalar {
public:
    Scalar() : v_(mpq_class(0)) {}   // rational zero

    static Scalar zero(const Field& f);
    static Scalar one(const Field& f);
    static Scalar from_int(long n, const Field& f);
    static Scalar from_mpq(const mpq_class& q);          // rational
    static Scalar from_string(const std::string& s, const Field& f);

    const Field field() const;

    bool is_zero() const;
    bool is_one() const;

    Scalar operator-() const;
    Scalar operator+(const Scalar& o) const;
    Scalar operator-(const Scalar& o) const;
    Scalar operator*(const Scalar& o) const;
    Scalar operator/(const Scalar& o) const;             // throws on zero divisor
    Scalar inverse() const;                              // throws on zero

    Scalar& operator+=(const Scalar& o) { return *this = *this + o; }
    Scalar& operator-=(const Scalar& o) { return *this = *this - o; }
    Scalar& operator*=(const Scalar& o) { return *this = *this * o; }

    bool operator==(const Scalar& o) const;
    bool operator!=(const Scalar& o) const { return !(*this == o); }

    // Strict weak order inside one field (rationals by value, F_p by residue).
    bool less(const Scalar& o) const;

    // True iff the value is a square in its field (Euler criterion for F_p,
    // numerator/denominator perfect squares for Q). Zero counts as a square.
    bool is_square() const;

    std::string to_string() const;                       // canonical; "-3/7", "12"
    const mpq_class& rational() const;                   // throws if not rational
    std::uint64_t residue() const;                       // throws if not prime field

    // Uniform random element; for Q a small integer in [-9, 9].
    static Scalar random(const Field& f, std::mt19937_64& rng);
    static Scalar random_nonzero(const Field& f, std::mt19937_64& rng);

private:
    struct FpVal {
        std::uint64_t v;
        std::uint32_t p;
    };
    explicit Scalar(mpq_class q) : v_(std::move(q)) {}
    explicit Scalar(FpVal f) : v_(f) {}
    static void require_same_field(const Scalar& a, const Scalar& b);

    std::variant<mpq_class, FpVal> v_;
};

}  // namespace conicliff
