#include "conicliff/quadform.hpp"

#include <algorithm>
#include <sstream>

#include "conicliff/poly_gcd.hpp"

namespace conicliff {

std::string fiber_class_name(FiberClass c) {
    switch (c) {
        case FiberClass::SmoothConic: return "SmoothConic";
        case FiberClass::LinePair: return "LinePair";
        case FiberClass::DoubleLine: return "DoubleLine";
    }
    return "?";
}

Report validate_form(const SplitTwist& twist, const PolyMatrix& m) {
    Report rep("quadform.validate");
    if (m.rows() != 3 || m.cols() != 3) {
        rep.fail("dimension", "matrix must be 3x3");
        return rep;
    }
    if (m.nvars() != twist.nvars())
        rep.fail("dimension", "matrix has " + std::to_string(m.nvars()) +
                                  " variables but base is P^" + std::to_string(twist.base_dim));

    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = i + 1; j < 3; ++j)
            if (m.at(i, j) != m.at(j, i))
                rep.fail("asymmetry", "entries (" + std::to_string(i + 1) + "," +
                                          std::to_string(j + 1) + ") and transpose differ");

    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = i; j < 3; ++j) {
            const auto& e = m.at(i, j);
            if (e.is_zero()) continue;
            const int want = twist.entry_degree(i, j);
            const std::string slot =
                "(" + std::to_string(i + 1) + "," + std::to_string(j + 1) + ")";
            if (want < 0)
                rep.fail("degree-pattern", "slot " + slot + " has prescribed degree " +
                                               std::to_string(want) + " < 0 and must be zero");
            else if (e.degree() != want)
                rep.fail("degree-pattern", "entry " + slot + " has degree " +
                                               std::to_string(e.degree()) + ", expected " +
                                               std::to_string(want));
        }

    if (m.is_zero())
        rep.fail("identically-zero", "the form vanishes identically");
    return rep;
}

TwistedQuadraticForm TwistedQuadraticForm::make(const SplitTwist& twist, PolyMatrix m) {
    Report rep = validate_form(twist, m);
    if (!rep.passed()) {
        std::ostringstream os;
        os << "invalid quadratic form:";
        for (const auto& f : rep.findings()) os << " [" << f.kind << "] " << f.message << ";";
        throw FormError(os.str());
    }
    m.set_symmetric();
    return TwistedQuadraticForm(twist, std::move(m));
}

HomogeneousPoly discriminant(const TwistedQuadraticForm& q) {
    return det3(q.matrix());
}

int expected_discriminant_degree(const SplitTwist& twist) {
    return 2 * twist.sum_a() - 3 * twist.l;
}

std::pair<int, FiberClass> fiber_rank(const TwistedQuadraticForm& q,
                                      std::span<const Scalar> point) {
    if (point.size() != q.twist().nvars())
        throw FormError("point arity mismatch");
    if (std::all_of(point.begin(), point.end(), [](const Scalar& s) { return s.is_zero(); }))
        throw FormError("point of P^n must have a nonzero coordinate");
    const int r = static_cast<int>(q.matrix().rank_at(point));
    switch (r) {
        case 3: return {3, FiberClass::SmoothConic};
        case 2: return {2, FiberClass::LinePair};
        case 1: return {1, FiberClass::DoubleLine};
        default:
            throw FormError("form vanishes at point (rank 0)");
    }
}

TwistedQuadraticForm normalized_twist(const TwistedQuadraticForm& q) {
    const SplitTwist& t = q.twist();
    const int shift = t.l - t.sum_a();
    SplitTwist nt;
    nt.base_dim = t.base_dim;
    for (int i = 0; i < 3; ++i) nt.a[i] = t.a[i] + shift;
    nt.l = 3 * t.l - 2 * t.sum_a();
    // The entry degrees a_i + a_j - l are invariant under the shift, so the
    // same matrix presents the normalized form.
    return TwistedQuadraticForm::make(nt, q.matrix());
}

std::vector<Scalar> random_projective_point(const Field& field, std::uint32_t nvars,
                                            std::mt19937_64& rng) {
    for (;;) {
        std::vector<Scalar> pt;
        pt.reserve(nvars);
        for (std::uint32_t i = 0; i < nvars; ++i) pt.push_back(Scalar::random(field, rng));
        auto nz = std::find_if(pt.begin(), pt.end(), [](const Scalar& s) { return !s.is_zero(); });
        if (nz == pt.end()) continue;
        if (!field.is_rational()) {
            const Scalar inv = nz->inverse();
            for (auto& c : pt) c = c * inv;
        }
        return pt;
    }
}

// ---------------------------------------------------------------------------
// Monte Carlo nonvanishing over F_p, F_{p^2}, F_{p^3}.

namespace {

// Arithmetic in F_p[t]/(m(t)) for fixed small degree k <= 3. The modulus is
// found deterministically: t^2 - (least nonresidue), and the first root-free
// member of the family t^3 + t + c.
struct ExtField {
    std::uint32_t p = 0;
    std::uint32_t k = 1;
    std::array<std::uint64_t, 3> reduction{0, 0, 0};   // t^k = sum reduction[j] t^j

    using Elem = std::array<std::uint64_t, 3>;

    static std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t p) {
        return (__uint128_t)a * b % p;
    }
    static std::uint64_t powmod(std::uint64_t a, std::uint64_t e, std::uint64_t p) {
        std::uint64_t r = 1;
        a %= p;
        while (e) {
            if (e & 1) r = mulmod(r, a, p);
            a = mulmod(a, a, p);
            e >>= 1;
        }
        return r;
    }

    static ExtField make(std::uint32_t p, std::uint32_t k) {
        ExtField f;
        f.p = p;
        f.k = k;
        if (k == 2) {
            std::uint64_t d = 2;
            while (powmod(d, (p - 1) / 2, p) == 1) ++d;
            f.reduction = {d, 0, 0};
        } else if (k == 3) {
            for (std::uint64_t c = 1;; ++c) {
                // roots of t^3 + t + c
                bool has_root = false;
                for (std::uint64_t x = 0; x < p && !has_root; ++x)
                    has_root = (mulmod(mulmod(x, x, p), x, p) + x + c) % p == 0;
                if (!has_root) {
                    // t^3 = -t - c
                    f.reduction = {(p - c % p) % p, p - 1, 0};
                    break;
                }
            }
        }
        return f;
    }

    Elem zero() const { return {0, 0, 0}; }
    Elem from_base(std::uint64_t v) const { return {v % p, 0, 0}; }
    bool is_zero(const Elem& a) const { return a[0] == 0 && a[1] == 0 && a[2] == 0; }

    Elem add(const Elem& a, const Elem& b) const {
        Elem r{};
        for (std::uint32_t i = 0; i < k; ++i) r[i] = (a[i] + b[i]) % p;
        return r;
    }
    Elem mul(const Elem& a, const Elem& b) const {
        std::array<std::uint64_t, 5> w{};
        for (std::uint32_t i = 0; i < k; ++i)
            for (std::uint32_t j = 0; j < k; ++j)
                w[i + j] = (w[i + j] + mulmod(a[i], b[j], p)) % p;
        for (int d = 2 * static_cast<int>(k) - 2; d >= static_cast<int>(k); --d) {
            const std::uint64_t c = w[d];
            if (c == 0) continue;
            w[d] = 0;
            for (std::uint32_t j = 0; j < k; ++j)
                w[d - k + j] = (w[d - k + j] + mulmod(c, reduction[j], p)) % p;
        }
        return {w[0], w[1], w[2]};
    }

    Elem random(std::mt19937_64& rng) const {
        std::uniform_int_distribution<std::uint64_t> d(0, p - 1);
        Elem r{};
        for (std::uint32_t i = 0; i < k; ++i) r[i] = d(rng);
        return r;
    }

    std::string to_string(const Elem& a) const {
        std::ostringstream os;
        os << a[0];
        if (k > 1) os << "+" << a[1] << "*t";
        if (k > 2) os << "+" << a[2] << "*t^2";
        return os.str();
    }
};

// A polynomial with coefficients reduced to residues mod p.
struct ReducedPoly {
    std::vector<std::pair<Monomial, std::uint64_t>> terms;
};

ReducedPoly reduce_mod_p(const HomogeneousPoly& f, std::uint32_t p) {
    ReducedPoly out;
    for (const auto& [m, c] : f.terms()) {
        std::uint64_t r;
        if (c.field().is_rational()) {
            const mpq_class& q = c.rational();
            mpz_class num = q.get_num() % p, den = q.get_den() % p;
            if (num < 0) num += p;
            if (den == 0)
                throw FieldError("coefficient denominator divisible by p=" + std::to_string(p));
            r = ExtField::mulmod(num.get_ui(),
                                 ExtField::powmod(den.get_ui(), p - 2, p), p);
        } else {
            if (c.field().p() != p) throw FieldError("prime mismatch in reduction");
            r = c.residue();
        }
        if (r != 0) out.terms.emplace_back(m, r);
    }
    return out;
}

ExtField::Elem eval_reduced(const ReducedPoly& f, const ExtField& F,
                            const std::vector<ExtField::Elem>& point) {
    ExtField::Elem acc = F.zero();
    for (const auto& [m, c] : f.terms) {
        ExtField::Elem t = F.from_base(c);
        for (std::size_t i = 0; i < point.size(); ++i)
            for (std::uint32_t e = 0; e < m[i]; ++e) t = F.mul(t, point[i]);
        acc = F.add(acc, t);
    }
    return acc;
}

}  // namespace

Report nowhere_vanishing_montecarlo(const TwistedQuadraticForm& q,
                                    const MonteCarloParams& params) {
    Report rep("quadform.nowhere_vanishing.montecarlo");
    const std::uint32_t p =
        q.field().is_rational() ? params.reduction_prime : q.field().p();

    std::vector<ReducedPoly> entries;
    try {
        for (std::size_t i = 0; i < 3; ++i)
            for (std::size_t j = i; j < 3; ++j)
                entries.push_back(reduce_mod_p(q.matrix().at(i, j), p));
    } catch (const FieldError& e) {
        rep.error("reduction", e.what());
        return rep;
    }

    if (params.samples == 0) {
        rep.info("skipped", "0 samples requested; probabilistic check skipped");
        return rep;
    }

    std::array<ExtField, 3> fields{ExtField::make(p, 1), ExtField::make(p, 2),
                                   ExtField::make(p, 3)};
    std::mt19937_64 rng(params.seed);
    const std::uint32_t nvars = q.twist().nvars();

    for (std::uint32_t s = 0; s < params.samples; ++s) {
        const ExtField& F = fields[s % 3];
        std::vector<ExtField::Elem> pt(nvars);
        bool nonzero = false;
        for (auto& c : pt) {
            c = F.random(rng);
            nonzero = nonzero || !F.is_zero(c);
        }
        if (!nonzero) {
            --s;   // resample; not a valid projective point
            continue;
        }
        bool all_zero = true;
        for (const auto& e : entries)
            if (!F.is_zero(eval_reduced(e, F, pt))) {
                all_zero = false;
                break;
            }
        if (all_zero) {
            nlohmann::json coords = nlohmann::json::array();
            for (const auto& c : pt) coords.push_back(F.to_string(c));
            rep.fail("common-zero",
                     "all six entries vanish at a point over F_{p^" + std::to_string(F.k) + "}",
                     {{"p", p}, {"extension_degree", F.k}, {"point", coords}});
            return rep;
        }
    }
    rep.info("probabilistic-pass",
             "no common zero found; probabilistically nonvanishing",
             {{"p", p}, {"samples", params.samples}, {"extension_degrees", {1, 2, 3}}});
    return rep;
}

Report nowhere_vanishing_exact_p1(const TwistedQuadraticForm& q) {
    Report rep("quadform.nowhere_vanishing.exact_p1");
    if (q.twist().base_dim != 1) {
        rep.error("base-dimension",
                  "exact mode is defined on P^1 only (base_dim=" +
                      std::to_string(q.twist().base_dim) + ")");
        return rep;
    }
    HomogeneousPoly g = HomogeneousPoly::zero(q.field(), 2);
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = i; j < 3; ++j)
            if (!q.matrix().at(i, j).is_zero()) g = poly_gcd(g, q.matrix().at(i, j));
    if (g.is_zero() || g.degree() == 0) {
        rep.info("coprime", "entries have constant gcd; form is nowhere vanishing");
        return rep;
    }
    rep.fail("common-factor", "entries share the factor " + g.to_string(),
             {{"gcd", g.to_string()}});
    return rep;
}

Report equivalent_conics_at(const TwistedQuadraticForm& q1, const TwistedQuadraticForm& q2,
                            std::span<const Scalar> point) {
    Report rep("quadform.equivalent_conics_at");
    if (q1.twist().base_dim != q2.twist().base_dim) {
        rep.error("base-dimension", "forms live over different projective spaces");
        return rep;
    }
    int r1, r2;
    try {
        r1 = fiber_rank(q1, point).first;
        r2 = fiber_rank(q2, point).first;
    } catch (const FormError& e) {
        rep.error("rank-zero", e.what());
        return rep;
    }
    if (r1 == r2)
        rep.info("ranks", "fiber ranks agree (" + std::to_string(r1) + ")",
                 {{"rank", r1}});
    else
        rep.fail("ranks",
                 "fiber ranks differ: " + std::to_string(r1) + " vs " + std::to_string(r2),
                 {{"rank1", r1}, {"rank2", r2}});

    if (r1 == 3 && r2 == 3 && q1.field().is_rational() && q2.field().is_rational()) {
        const Scalar d1 = q1.matrix().eval(point).det();
        const Scalar d2 = q2.matrix().eval(point).det();
        const bool same = (d1 * d2).is_square();
        rep.info("q-rational-refinement",
                 std::string("determinant square classes over Q ") +
                     (same ? "agree" : "differ") + " (informational, not part of the verdict)",
                 {{"same_square_class", same},
                  {"det1", d1.to_string()},
                  {"det2", d2.to_string()}});
    }
    return rep;
}

}  // namespace conicliff
