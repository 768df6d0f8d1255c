#include "conicliff/poly.hpp"

#include <algorithm>
#include <sstream>

namespace conicliff {

HomogeneousPoly::HomogeneousPoly(Field field, std::uint32_t nvars)
    : field_(field), nvars_(nvars) {
    if (nvars == 0) throw PolyError("polynomial needs at least one variable");
}

HomogeneousPoly HomogeneousPoly::zero(Field field, std::uint32_t nvars) {
    return HomogeneousPoly(field, nvars);
}

HomogeneousPoly HomogeneousPoly::constant(const Scalar& c, std::uint32_t nvars) {
    HomogeneousPoly p(c.field(), nvars);
    p.insert_term(Monomial(nvars, 0), c);
    return p;
}

HomogeneousPoly HomogeneousPoly::variable(std::uint32_t i, std::uint32_t nvars, Field field) {
    if (i >= nvars) throw PolyError("variable index out of range");
    HomogeneousPoly p(field, nvars);
    Monomial m(nvars, 0);
    m[i] = 1;
    p.insert_term(m, Scalar::one(field));
    return p;
}

HomogeneousPoly HomogeneousPoly::monomial(const Scalar& c, Monomial m) {
    HomogeneousPoly p(c.field(), static_cast<std::uint32_t>(m.size()));
    p.insert_term(m, c);
    return p;
}

void HomogeneousPoly::insert_term(const Monomial& m, const Scalar& c) {
    if (m.size() != nvars_) throw PolyError("monomial arity mismatch");
    if (c.is_zero()) return;
    const std::uint32_t d = monomial_degree(m);
    if (terms_.empty())
        degree_ = d;
    else if (d != degree_)
        throw PolyError("non-homogeneous combination: degree " + std::to_string(d) +
                        " term added to degree " + std::to_string(degree_) + " polynomial");
    auto it = terms_.find(m);
    if (it == terms_.end()) {
        terms_.emplace(m, c);
    } else {
        Scalar s = it->second + c;
        if (s.is_zero())
            terms_.erase(it);
        else
            it->second = s;
    }
}

bool HomogeneousPoly::is_constant() const {
    return terms_.empty() || degree_ == 0;
}

const Monomial& HomogeneousPoly::leading_monomial() const {
    if (terms_.empty()) throw PolyError("zero polynomial has no leading term");
    return terms_.rbegin()->first;
}

const Scalar& HomogeneousPoly::leading_coefficient() const {
    if (terms_.empty()) throw PolyError("zero polynomial has no leading term");
    return terms_.rbegin()->second;
}

Scalar HomogeneousPoly::coefficient(const Monomial& m) const {
    auto it = terms_.find(m);
    if (it == terms_.end()) return Scalar::zero(field_);
    return it->second;
}

HomogeneousPoly HomogeneousPoly::operator-() const {
    HomogeneousPoly r(field_, nvars_);
    r.degree_ = degree_;
    for (const auto& [m, c] : terms_) r.terms_.emplace(m, -c);
    return r;
}

HomogeneousPoly HomogeneousPoly::operator+(const HomogeneousPoly& o) const {
    if (nvars_ != o.nvars_) throw PolyError("variable count mismatch in +");
    if (field_ != o.field_) throw PolyError("field mismatch in +");
    if (is_zero()) return o;
    if (o.is_zero()) return *this;
    if (degree_ != o.degree_)
        throw PolyError("cannot add homogeneous polynomials of degrees " +
                        std::to_string(degree_) + " and " + std::to_string(o.degree_));
    HomogeneousPoly r = *this;
    for (const auto& [m, c] : o.terms_) r.insert_term(m, c);
    return r;
}

HomogeneousPoly HomogeneousPoly::operator-(const HomogeneousPoly& o) const {
    return *this + (-o);
}

HomogeneousPoly HomogeneousPoly::operator*(const HomogeneousPoly& o) const {
    if (nvars_ != o.nvars_) throw PolyError("variable count mismatch in *");
    if (field_ != o.field_) throw PolyError("field mismatch in *");
    HomogeneousPoly r(field_, nvars_);
    if (is_zero() || o.is_zero()) return r;
    Monomial m(nvars_);
    for (const auto& [ma, ca] : terms_) {
        for (const auto& [mb, cb] : o.terms_) {
            for (std::uint32_t i = 0; i < nvars_; ++i) m[i] = ma[i] + mb[i];
            r.insert_term(m, ca * cb);
        }
    }
    return r;
}

HomogeneousPoly HomogeneousPoly::scaled(const Scalar& c) const {
    HomogeneousPoly r(field_, nvars_);
    if (c.is_zero()) return r;
    r.degree_ = degree_;
    for (const auto& [m, a] : terms_) r.terms_.emplace(m, a * c);
    return r;
}

bool HomogeneousPoly::operator==(const HomogeneousPoly& o) const {
    if (nvars_ != o.nvars_ || field_ != o.field_) return false;
    if (terms_.size() != o.terms_.size()) return false;
    auto it = o.terms_.begin();
    for (const auto& [m, c] : terms_) {
        if (m != it->first || c != it->second) return false;
        ++it;
    }
    return true;
}

Scalar HomogeneousPoly::eval(std::span<const Scalar> point) const {
    if (point.size() != nvars_) throw PolyError("evaluation point arity mismatch");
    Scalar acc = Scalar::zero(field_);
    for (const auto& [m, c] : terms_) {
        Scalar t = c;
        for (std::uint32_t i = 0; i < nvars_; ++i)
            for (std::uint32_t e = 0; e < m[i]; ++e) t *= point[i];
        acc += t;
    }
    return acc;
}

HomogeneousPoly HomogeneousPoly::derivative(std::uint32_t var) const {
    if (var >= nvars_) throw PolyError("variable index out of range");
    HomogeneousPoly r(field_, nvars_);
    for (const auto& [m, c] : terms_) {
        if (m[var] == 0) continue;
        Monomial d = m;
        d[var] -= 1;
        r.insert_term(d, c * Scalar::from_int(static_cast<long>(m[var]), field_));
    }
    return r;
}

std::string HomogeneousPoly::to_string() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    // Descending graded-lex: leading term first.
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
        const auto& [m, c] = *it;
        std::string coeff = c.to_string();
        bool negative = !coeff.empty() && coeff[0] == '-';
        if (negative) coeff = coeff.substr(1);
        if (first) {
            if (negative) os << "-";
            first = false;
        } else {
            os << (negative ? " - " : " + ");
        }
        std::vector<std::string> factors;
        const bool is_const_monomial = monomial_degree(m) == 0;
        if (coeff != "1" || is_const_monomial) factors.push_back(coeff);
        for (std::uint32_t i = 0; i < nvars_; ++i) {
            if (m[i] == 0) continue;
            std::string v = "x" + std::to_string(i);
            if (m[i] > 1) v += "^" + std::to_string(m[i]);
            factors.push_back(v);
        }
        for (std::size_t k = 0; k < factors.size(); ++k) {
            if (k) os << "*";
            os << factors[k];
        }
    }
    return os.str();
}

bool HomogeneousPoly::divisible_by(const HomogeneousPoly& divisor) const {
    try {
        (void)divide_exact(divisor);
        return true;
    } catch (const PolyError&) {
        return false;
    }
}

HomogeneousPoly HomogeneousPoly::divide_exact(const HomogeneousPoly& divisor) const {
    if (divisor.is_zero()) throw PolyError("division by zero polynomial");
    if (nvars_ != divisor.nvars_ || field_ != divisor.field_)
        throw PolyError("shape mismatch in division");
    HomogeneousPoly q(field_, nvars_);
    HomogeneousPoly r = *this;
    const Monomial& lm = divisor.leading_monomial();
    const Scalar& lc = divisor.leading_coefficient();
    while (!r.is_zero()) {
        const Monomial& rm = r.leading_monomial();
        Monomial diff(nvars_);
        for (std::uint32_t i = 0; i < nvars_; ++i) {
            if (rm[i] < lm[i]) throw PolyError("inexact polynomial division");
            diff[i] = rm[i] - lm[i];
        }
        HomogeneousPoly t = monomial(r.leading_coefficient() / lc, diff);
        q += t;
        r -= t * divisor;
    }
    return q;
}

std::vector<Monomial> HomogeneousPoly::monomial_basis(std::uint32_t nvars, std::uint32_t degree) {
    std::vector<Monomial> out;
    Monomial cur(nvars, 0);
    // Enumerate exponent vectors summing to `degree`, recursively.
    auto rec = [&](auto&& self, std::uint32_t pos, std::uint32_t left) -> void {
        if (pos + 1 == nvars) {
            cur[pos] = left;
            out.push_back(cur);
            return;
        }
        for (std::uint32_t e = 0; e <= left; ++e) {
            cur[pos] = e;
            self(self, pos + 1, left - e);
        }
    };
    rec(rec, 0, degree);
    std::sort(out.begin(), out.end(), GrlexLess{});
    return out;
}

HomogeneousPoly HomogeneousPoly::random(Field field, std::uint32_t nvars, std::uint32_t degree,
                                        std::mt19937_64& rng, bool require_nonzero) {
    for (int attempt = 0; attempt < 64; ++attempt) {
        HomogeneousPoly p(field, nvars);
        for (const auto& m : monomial_basis(nvars, degree))
            p.insert_term(m, Scalar::random(field, rng));
        if (!require_nonzero || !p.is_zero()) return p;
    }
    throw PolyError("failed to sample a nonzero polynomial");
}

}  // namespace conicliff
