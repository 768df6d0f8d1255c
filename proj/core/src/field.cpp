#include "conicliff/field.hpp"

#include <sstream>

namespace conicliff {

namespace {

bool is_odd_prime(std::uint32_t p) {
    if (p < 3 || p % 2 == 0) return false;
    mpz_class z(p);
    return mpz_probab_prime_p(z.get_mpz_t(), 32) != 0;
}

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t p) {
    return (__uint128_t)a * b % p;
}

std::uint64_t powmod(std::uint64_t a, std::uint64_t e, std::uint64_t p) {
    std::uint64_t r = 1;
    a %= p;
    while (e) {
        if (e & 1) r = mulmod(r, a, p);
        a = mulmod(a, a, p);
        e >>= 1;
    }
    return r;
}

}  // namespace

Field Field::prime(std::uint32_t p) {
    if (!is_odd_prime(p))
        throw FieldError("F_p requires an odd prime, got p=" + std::to_string(p));
    return Field(Kind::Prime, p);
}

std::string Field::name() const {
    if (kind_ == Kind::Rational) return "Q";
    return "Fp:" + std::to_string(p_);
}

Field Field::parse(const std::string& name) {
    if (name == "Q") return rationals();
    if (name.rfind("Fp:", 0) == 0) {
        const std::string digits = name.substr(3);
        if (digits.empty() || digits.find_first_not_of("0123456789") != std::string::npos)
            throw FieldError("bad field spec: " + name);
        unsigned long p = std::stoul(digits);
        if (p > 0xffffffffUL) throw FieldError("prime too large: " + name);
        return prime(static_cast<std::uint32_t>(p));
    }
    throw FieldError("bad field spec: " + name + " (expected \"Q\" or \"Fp:<p>\")");
}

Scalar Scalar::zero(const Field& f) { return from_int(0, f); }
Scalar Scalar::one(const Field& f) { return from_int(1, f); }

Scalar Scalar::from_int(long n, const Field& f) {
    if (f.is_rational()) return Scalar(mpq_class(n));
    const std::uint32_t p = f.p();
    long r = n % static_cast<long>(p);
    if (r < 0) r += p;
    return Scalar(FpVal{static_cast<std::uint64_t>(r), p});
}

Scalar Scalar::from_mpq(const mpq_class& q) {
    mpq_class c = q;
    c.canonicalize();
    return Scalar(c);
}

Scalar Scalar::from_string(const std::string& s, const Field& f) {
    mpz_class z;
    if (s.empty() || z.set_str(s, 10) != 0)
        throw FieldError("bad integer literal: \"" + s + "\"");
    if (f.is_rational()) return Scalar(mpq_class(z));
    mpz_class m = z % f.p();
    if (m < 0) m += f.p();
    return Scalar(FpVal{m.get_ui(), f.p()});
}

const Field Scalar::field() const {
    if (std::holds_alternative<mpq_class>(v_)) return Field::rationals();
    return Field::prime(std::get<FpVal>(v_).p);
}

bool Scalar::is_zero() const {
    if (auto* q = std::get_if<mpq_class>(&v_)) return *q == 0;
    return std::get<FpVal>(v_).v == 0;
}

bool Scalar::is_one() const {
    if (auto* q = std::get_if<mpq_class>(&v_)) return *q == 1;
    return std::get<FpVal>(v_).v == 1;
}

void Scalar::require_same_field(const Scalar& a, const Scalar& b) {
    if (a.v_.index() != b.v_.index())
        throw FieldError("mixed-field arithmetic (Q vs F_p)");
    if (auto* x = std::get_if<FpVal>(&a.v_)) {
        if (x->p != std::get<FpVal>(b.v_).p)
            throw FieldError("mixed-field arithmetic (different primes)");
    }
}

Scalar Scalar::operator-() const {
    if (auto* q = std::get_if<mpq_class>(&v_)) return Scalar(mpq_class(-*q));
    auto f = std::get<FpVal>(v_);
    return Scalar(FpVal{f.v == 0 ? 0 : f.p - f.v, f.p});
}

Scalar Scalar::operator+(const Scalar& o) const {
    require_same_field(*this, o);
    if (auto* q = std::get_if<mpq_class>(&v_))
        return Scalar(mpq_class(*q + std::get<mpq_class>(o.v_)));
    auto a = std::get<FpVal>(v_), b = std::get<FpVal>(o.v_);
    std::uint64_t s = a.v + b.v;
    if (s >= a.p) s -= a.p;
    return Scalar(FpVal{s, a.p});
}

Scalar Scalar::operator-(const Scalar& o) const { return *this + (-o); }

Scalar Scalar::operator*(const Scalar& o) const {
    require_same_field(*this, o);
    if (auto* q = std::get_if<mpq_class>(&v_))
        return Scalar(mpq_class(*q * std::get<mpq_class>(o.v_)));
    auto a = std::get<FpVal>(v_), b = std::get<FpVal>(o.v_);
    return Scalar(FpVal{mulmod(a.v, b.v, a.p), a.p});
}

Scalar Scalar::inverse() const {
    if (is_zero()) throw FieldError("division by zero");
    if (auto* q = std::get_if<mpq_class>(&v_)) return Scalar(mpq_class(1 / *q));
    auto f = std::get<FpVal>(v_);
    return Scalar(FpVal{powmod(f.v, f.p - 2, f.p), f.p});
}

Scalar Scalar::operator/(const Scalar& o) const {
    require_same_field(*this, o);
    return *this * o.inverse();
}

bool Scalar::operator==(const Scalar& o) const {
    if (v_.index() != o.v_.index()) return false;
    if (auto* q = std::get_if<mpq_class>(&v_)) return *q == std::get<mpq_class>(o.v_);
    auto a = std::get<FpVal>(v_), b = std::get<FpVal>(o.v_);
    return a.p == b.p && a.v == b.v;
}

bool Scalar::less(const Scalar& o) const {
    require_same_field(*this, o);
    if (auto* q = std::get_if<mpq_class>(&v_)) return *q < std::get<mpq_class>(o.v_);
    return std::get<FpVal>(v_).v < std::get<FpVal>(o.v_).v;
}

bool Scalar::is_square() const {
    if (is_zero()) return true;
    if (auto* q = std::get_if<mpq_class>(&v_)) {
        if (*q < 0) return false;
        return mpz_perfect_square_p(q->get_num().get_mpz_t()) &&
               mpz_perfect_square_p(q->get_den().get_mpz_t());
    }
    auto f = std::get<FpVal>(v_);
    return powmod(f.v, (f.p - 1) / 2, f.p) == 1;
}

std::string Scalar::to_string() const {
    if (auto* q = std::get_if<mpq_class>(&v_)) return q->get_str();
    return std::to_string(std::get<FpVal>(v_).v);
}

const mpq_class& Scalar::rational() const {
    if (auto* q = std::get_if<mpq_class>(&v_)) return *q;
    throw FieldError("not a rational value");
}

std::uint64_t Scalar::residue() const {
    if (auto* f = std::get_if<FpVal>(&v_)) return f->v;
    throw FieldError("not a prime-field value");
}

Scalar Scalar::random(const Field& f, std::mt19937_64& rng) {
    if (f.is_rational()) {
        std::uniform_int_distribution<long> d(-9, 9);
        return from_int(d(rng), f);
    }
    std::uniform_int_distribution<std::uint64_t> d(0, f.p() - 1);
    return Scalar(FpVal{d(rng), f.p()});
}

Scalar Scalar::random_nonzero(const Field& f, std::mt19937_64& rng) {
    for (;;) {
        Scalar s = random(f, rng);
        if (!s.is_zero()) return s;
    }
}

}  // namespace conicliff
