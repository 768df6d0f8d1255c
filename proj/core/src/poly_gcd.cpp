#include "conicliff/poly_gcd.hpp"

#include <map>
#include <optional>

namespace conicliff {

namespace {

HomogeneousPoly normalize(const HomogeneousPoly& p) {
    if (p.is_zero()) return p;
    return p.scaled(p.leading_coefficient().inverse());
}

// Scales away the numeric content: over Q, clears denominators and divides
// by the integer gcd of the coefficients. Over a field this changes the
// polynomial only by a unit, which the monic normalization at the end
// absorbs; stripping it at every step is what keeps the pseudo-remainder
// sequences from exploding.
HomogeneousPoly strip_numeric_content(const HomogeneousPoly& p) {
    if (p.is_zero() || !p.field().is_rational()) return p;
    mpz_class den_lcm = 1, num_gcd = 0;
    for (const auto& [m, c] : p.terms())
        mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(),
                c.rational().get_den().get_mpz_t());
    for (const auto& [m, c] : p.terms()) {
        mpz_class scaled_num = c.rational().get_num() * (den_lcm / c.rational().get_den());
        mpz_gcd(num_gcd.get_mpz_t(), num_gcd.get_mpz_t(), scaled_num.get_mpz_t());
    }
    if (num_gcd == 0) return p;
    return p.scaled(Scalar::from_mpq(mpq_class(den_lcm, num_gcd)));
}

bool occurs(const HomogeneousPoly& p, std::uint32_t v) {
    for (const auto& [m, c] : p.terms())
        if (m[v] > 0) return true;
    return false;
}

// Highest variable index occurring in f or g, if any.
std::optional<std::uint32_t> main_variable(const HomogeneousPoly& f, const HomogeneousPoly& g) {
    for (std::uint32_t v = f.nvars(); v-- > 0;)
        if (occurs(f, v) || occurs(g, v)) return v;
    return std::nullopt;
}

// View of a polynomial as univariate in x_v with polynomial coefficients;
// each coefficient keeps the full variable set with exponent 0 at v.
std::map<std::uint32_t, HomogeneousPoly> coeffs_in(const HomogeneousPoly& p, std::uint32_t v) {
    std::map<std::uint32_t, HomogeneousPoly> out;
    for (const auto& [m, c] : p.terms()) {
        Monomial rest = m;
        const std::uint32_t k = rest[v];
        rest[v] = 0;
        auto it = out.find(k);
        if (it == out.end())
            out.emplace(k, HomogeneousPoly::monomial(c, rest));
        else
            it->second += HomogeneousPoly::monomial(c, rest);
    }
    return out;
}

std::uint32_t degree_in(const HomogeneousPoly& p, std::uint32_t v) {
    std::uint32_t d = 0;
    for (const auto& [m, c] : p.terms()) d = std::max(d, m[v]);
    return d;
}

HomogeneousPoly leading_coeff_in(const HomogeneousPoly& p, std::uint32_t v) {
    auto cs = coeffs_in(p, v);
    return cs.rbegin()->second;
}

HomogeneousPoly gcd_impl(const HomogeneousPoly& f, const HomogeneousPoly& g);

HomogeneousPoly content_in(const HomogeneousPoly& p, std::uint32_t v) {
    HomogeneousPoly c = HomogeneousPoly::zero(p.field(), p.nvars());
    for (const auto& [k, coeff] : coeffs_in(p, v)) {
        c = gcd_impl(c, coeff);
        if (!c.is_zero() && c.degree() == 0) break;   // already a unit
    }
    return c;
}

HomogeneousPoly primitive_part(const HomogeneousPoly& p, std::uint32_t v) {
    if (p.is_zero()) return p;
    return strip_numeric_content(p.divide_exact(content_in(p, v)));
}

// Sparse pseudo-remainder of f by g in x_v: repeats r <- lc(g)*r - lc(r)*x^k*g
// until deg_v(r) < deg_v(g). Stays homogeneous throughout.
HomogeneousPoly prem(HomogeneousPoly r, const HomogeneousPoly& g, std::uint32_t v) {
    const std::uint32_t dg = degree_in(g, v);
    const HomogeneousPoly lg = leading_coeff_in(g, v);
    while (!r.is_zero() && degree_in(r, v) >= dg) {
        const std::uint32_t dr = degree_in(r, v);
        HomogeneousPoly lr = leading_coeff_in(r, v);
        Monomial shift(r.nvars(), 0);
        shift[v] = dr - dg;
        const HomogeneousPoly mono =
            HomogeneousPoly::monomial(Scalar::one(r.field()), shift);
        r = r * lg - lr * mono * g;
    }
    return r;
}

HomogeneousPoly gcd_impl(const HomogeneousPoly& f0, const HomogeneousPoly& g0) {
    const HomogeneousPoly f = strip_numeric_content(f0);
    const HomogeneousPoly g = strip_numeric_content(g0);
    if (f.is_zero()) return normalize(g);
    if (g.is_zero()) return normalize(f);
    if (f.degree() == 0 || g.degree() == 0)
        return HomogeneousPoly::constant(Scalar::one(f.field()), f.nvars());

    const auto vopt = main_variable(f, g);
    if (!vopt) return HomogeneousPoly::constant(Scalar::one(f.field()), f.nvars());
    const std::uint32_t v = *vopt;

    const HomogeneousPoly cf = content_in(f, v);
    const HomogeneousPoly cg = content_in(g, v);
    const HomogeneousPoly c = gcd_impl(cf, cg);

    HomogeneousPoly a = strip_numeric_content(f.divide_exact(cf));
    HomogeneousPoly b = strip_numeric_content(g.divide_exact(cg));
    while (!b.is_zero()) {
        HomogeneousPoly r = prem(a, b, v);
        a = b;
        b = r.is_zero() ? r : primitive_part(r, v);
    }
    return normalize(c * a);
}

}  // namespace

HomogeneousPoly poly_gcd(const HomogeneousPoly& f, const HomogeneousPoly& g) {
    if (f.nvars() != g.nvars() || f.field() != g.field())
        throw PolyError("gcd shape mismatch");
    return gcd_impl(f, g);
}

bool squarefree_check(const HomogeneousPoly& f) {
    if (f.is_zero()) throw PolyError("squarefree_check of the zero polynomial");
    HomogeneousPoly d = f;
    for (std::uint32_t v = 0; v < f.nvars(); ++v) {
        d = poly_gcd(d, f.derivative(v));
        if (!d.is_zero() && d.degree() == 0) return true;
    }
    return !d.is_zero() && d.degree() == 0;
}

}  // namespace conicliff
