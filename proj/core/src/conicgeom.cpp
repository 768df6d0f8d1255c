#include "conicliff/conicgeom.hpp"

#include <algorithm>

#include "conicliff/poly_gcd.hpp"

namespace conicliff {

std::string instance_tag_name(InstanceTag t) {
    switch (t) {
        case InstanceTag::Type5n: return "type5n";
        case InstanceTag::Mod12nb: return "mod12nb";
        case InstanceTag::Mod10na: return "mod10na";
        case InstanceTag::Mod8nb: return "mod8nb";
        case InstanceTag::Random: return "random";
    }
    return "?";
}

InstanceTag parse_instance_tag(const std::string& name) {
    if (name == "type5n") return InstanceTag::Type5n;
    if (name == "mod12nb") return InstanceTag::Mod12nb;
    if (name == "mod10na") return InstanceTag::Mod10na;
    if (name == "mod8nb") return InstanceTag::Mod8nb;
    if (name == "random") return InstanceTag::Random;
    throw FormError("unknown instance tag: " + name);
}

SplitTwist twist_for_tag(InstanceTag tag) {
    SplitTwist t;
    t.base_dim = 2;
    switch (tag) {
        case InstanceTag::Type5n: t.a = {0, 1, 1}; t.l = -1; break;
        case InstanceTag::Mod12nb: t.a = {0, 0, 0}; t.l = -1; break;
        case InstanceTag::Mod10na: t.a = {1, 1, 0}; t.l = 0; break;
        case InstanceTag::Mod8nb: t.a = {1, 0, 0}; t.l = -1; break;
        case InstanceTag::Random:
            throw FormError("tag random carries no fixed twist data");
    }
    return t;
}

ConicBundleInstance make_instance(const InstanceSpec& spec) {
    SplitTwist twist;
    if (spec.tag == InstanceTag::Random) {
        if (!spec.random_twist) throw FormError("tag random requires explicit twist data");
        twist = *spec.random_twist;
    } else {
        twist = twist_for_tag(spec.tag);
    }
    const std::uint32_t nv = twist.nvars();
    std::mt19937_64 rng(spec.seed);

    constexpr int kMaxAttempts = 32;
    for (int attempt = 0; attempt < kMaxAttempts; ++attempt) {
        PolyMatrix m(3, 3, spec.field, nv);
        for (std::size_t i = 0; i < 3; ++i)
            for (std::size_t j = i; j < 3; ++j) {
                const int d = twist.entry_degree(i, j);
                if (d < 0) continue;   // slot stays zero
                // The (1,1) slot of type 5n carries the distinguished line:
                // the section through the first summand meets the bundle
                // exactly over its zero locus, so keep it nonzero.
                const bool force_nonzero =
                    spec.tag == InstanceTag::Type5n && i == 0 && j == 0;
                HomogeneousPoly e = HomogeneousPoly::random(
                    spec.field, nv, static_cast<std::uint32_t>(d), rng, force_nonzero);
                m.at(i, j) = e;
                m.at(j, i) = e;
            }
        if (spec.overrides) {
            static constexpr std::pair<std::size_t, std::size_t> slots[6] = {
                {0, 0}, {0, 1}, {0, 2}, {1, 1}, {1, 2}, {2, 2}};
            for (std::size_t s = 0; s < 6; ++s) {
                const std::string& text = (*spec.overrides)[s];
                if (text.empty()) continue;
                HomogeneousPoly e = parse_poly(text, spec.field, nv);
                m.at(slots[s].first, slots[s].second) = e;
                m.at(slots[s].second, slots[s].first) = e;
            }
        }
        if (m.is_zero()) continue;

        TwistedQuadraticForm q = TwistedQuadraticForm::make(twist, m);
        HomogeneousPoly disc = discriminant(q);
        if (disc.is_zero()) continue;   // degenerate family; redraw

        MonteCarloParams mc;
        mc.samples = 120;
        mc.seed = spec.seed ^ 0x9e3779b97f4a7c15ULL ^ static_cast<std::uint64_t>(attempt);
        if (!nowhere_vanishing_montecarlo(q, mc).passed()) continue;

        const int disc_degree = disc.degree();
        return ConicBundleInstance{std::move(q), spec.tag, std::move(disc), disc_degree};
    }
    throw FormError("builder failed the nowhere-vanishing check after " +
                    std::to_string(kMaxAttempts) + " reseeds (tag " +
                    instance_tag_name(spec.tag) + ", seed " + std::to_string(spec.seed) + ")");
}

ConicBundleInstance make_type_5n(const InstanceSpec& spec) {
    if (spec.tag != InstanceTag::Type5n) throw FormError("spec tag must be type5n");
    return make_instance(spec);
}

ConicBundleInstance make_modified(const InstanceSpec& spec) {
    if (spec.tag != InstanceTag::Mod12nb && spec.tag != InstanceTag::Mod10na &&
        spec.tag != InstanceTag::Mod8nb)
        throw FormError("spec tag must be one of mod12nb/mod10na/mod8nb");
    return make_instance(spec);
}

TwistedQuadraticForm reduce_form_mod_p(const TwistedQuadraticForm& q, std::uint32_t p) {
    if (!q.field().is_rational()) {
        if (q.field().p() != p) throw FormError("form already lives over a different prime");
        return q;
    }
    const Field fp = Field::prime(p);
    PolyMatrix m(3, 3, fp, q.twist().nvars());
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = 0; j < 3; ++j) {
            HomogeneousPoly e = HomogeneousPoly::zero(fp, q.twist().nvars());
            for (const auto& [mono, c] : q.matrix().at(i, j).terms()) {
                const mpq_class& v = c.rational();
                mpz_class num = v.get_num() % p, den = v.get_den() % p;
                if (num < 0) num += p;
                if (den == 0) throw FormError("coefficient denominator divisible by p");
                Scalar r = Scalar::from_int(static_cast<long>(num.get_ui()), fp) /
                           Scalar::from_int(static_cast<long>(den.get_ui()), fp);
                if (!r.is_zero()) e += HomogeneousPoly::monomial(r, mono);
            }
            m.at(i, j) = e;
        }
    return TwistedQuadraticForm::make(q.twist(), m);
}

std::vector<std::vector<Scalar>> sample_discriminant_points(
    const TwistedQuadraticForm& q, std::uint32_t count, std::uint64_t seed,
    std::uint32_t reduction_prime, std::size_t* lines_in_disc) {
    const TwistedQuadraticForm qp =
        q.field().is_rational() ? reduce_form_mod_p(q, reduction_prime) : q;
    const Field fp = qp.field();
    const std::uint32_t p = fp.p();
    const std::uint32_t nv = qp.twist().nvars();
    const HomogeneousPoly disc = discriminant(qp);
    if (lines_in_disc) *lines_in_disc = 0;

    std::vector<std::vector<Scalar>> out;
    if (disc.is_zero() || nv < 2) return out;

    std::mt19937_64 rng(seed);
    constexpr int kMaxLines = 256;
    for (int line = 0; line < kMaxLines && out.size() < count; ++line) {
        const std::vector<Scalar> a = random_projective_point(fp, nv, rng);
        const std::vector<Scalar> b = random_projective_point(fp, nv, rng);
        std::vector<std::vector<Scalar>> roots;
        bool all_zero = true;
        // x = a + u*b for u in F_p, then the point b itself (u = infinity).
        for (std::uint64_t u = 0; u <= p; ++u) {
            std::vector<Scalar> pt(nv, Scalar::zero(fp));
            if (u == p) {
                pt = b;
            } else {
                const Scalar su = Scalar::from_int(static_cast<long>(u), fp);
                bool nonzero = false;
                for (std::uint32_t i = 0; i < nv; ++i) {
                    pt[i] = a[i] + su * b[i];
                    nonzero = nonzero || !pt[i].is_zero();
                }
                if (!nonzero) continue;
            }
            if (disc.eval(pt).is_zero())
                roots.push_back(pt);
            else
                all_zero = false;
        }
        if (all_zero) {
            if (lines_in_disc) ++*lines_in_disc;
            continue;
        }
        for (auto& r : roots) {
            out.push_back(std::move(r));
            if (out.size() == count) break;
        }
    }
    return out;
}

namespace {

// Base-direction partials of the total-space equation at (s, y): the fiber
// partials vanish automatically for y in ker M(s), so the sample is singular
// iff d/dx_m [y^T M(x) y] vanishes at s for every m except the chart
// coordinate (the first coordinate of s normalized to 1).
bool singular_at(const TwistedQuadraticForm& q, const std::vector<Scalar>& s,
                 const std::vector<Scalar>& y, std::size_t chart) {
    const std::uint32_t nv = q.twist().nvars();
    for (std::uint32_t m = 0; m < nv; ++m) {
        if (m == chart) continue;
        Scalar g = Scalar::zero(q.field());
        for (std::size_t i = 0; i < 3; ++i)
            for (std::size_t j = 0; j < 3; ++j) {
                const HomogeneousPoly d = q.matrix().at(i, j).derivative(m);
                if (!d.is_zero()) g += d.eval(s) * y[i] * y[j];
            }
        if (!g.is_zero()) return false;
    }
    return true;
}

std::size_t first_nonzero(const std::vector<Scalar>& v) {
    for (std::size_t i = 0; i < v.size(); ++i)
        if (!v[i].is_zero()) return i;
    return 0;
}

nlohmann::json point_json(const std::vector<Scalar>& v) {
    nlohmann::json j = nlohmann::json::array();
    for (const auto& c : v) j.push_back(c.to_string());
    return j;
}

}  // namespace

Report smoothness_probe(const ConicBundleInstance& instance, std::uint32_t sample_count,
                        std::uint64_t seed) {
    Report rep("conicgeom.smoothness_probe");
    const TwistedQuadraticForm& q = instance.q;

    if (instance.disc.is_zero()) {
        rep.error("degenerate-family", "identically vanishing discriminant");
        return rep;
    }
    if (squarefree_check(instance.disc))
        rep.info("squarefree-discriminant", "discriminant is squarefree (reduced curve)");
    else
        rep.fail("non-squarefree-discriminant",
                 "discriminant has a repeated factor; expected signature of a non-smooth "
                 "total space or worse-than-line-pair degenerations");

    if (q.twist().base_dim == 0) {
        const std::vector<Scalar> pt{Scalar::one(q.field())};
        const int r = static_cast<int>(q.matrix().rank_at(pt));
        if (r == 3)
            rep.info("fiber", "nondegenerate conic over a point; no singular points");
        else
            rep.fail("singular-point", "conic over a point has rank " + std::to_string(r),
                     {{"rank", r}});
        return rep;
    }

    const TwistedQuadraticForm qp = q.field().is_rational()
                                        ? reduce_form_mod_p(q, kDefaultPrime)
                                        : q;
    if (q.field().is_rational())
        rep.info("reduction", "probing the F_p reduction at p=" + std::to_string(kDefaultPrime));

    if (sample_count == 0) {
        rep.info("skipped", "0 samples requested; Jacobian probe skipped");
        return rep;
    }

    std::size_t lines_in_disc = 0;
    const auto points = sample_discriminant_points(qp, sample_count, seed,
                                                   kDefaultPrime, &lines_in_disc);
    if (lines_in_disc > 0)
        rep.info("line-in-discriminant",
                 std::to_string(lines_in_disc) + " sampled line(s) lie inside the discriminant");
    if (points.empty()) {
        rep.info("no-disc-points",
                 "no rational discriminant points found among the sampled lines");
        return rep;
    }

    std::size_t singular_found = 0;
    for (const auto& s : points) {
        const auto kernel = qp.matrix().eval(s).kernel_basis();
        for (const auto& y : kernel) {
            if (singular_at(qp, s, y, first_nonzero(s))) {
                ++singular_found;
                rep.fail("singular-point", "total space is singular over a discriminant point",
                         {{"base_point", point_json(s)},
                          {"fiber_point", point_json(y)},
                          {"fiber_rank", 3 - kernel.size()}});
            }
        }
    }
    if (singular_found == 0)
        rep.info("jacobian", "no singular point among " + std::to_string(points.size()) +
                                 " sampled discriminant points");
    return rep;
}

Report discriminant_data_compare(const TwistedQuadraticForm& q1,
                                 const TwistedQuadraticForm& q2, std::uint32_t sample_count,
                                 std::uint64_t seed) {
    Report rep("conicgeom.discriminant_data_compare");
    rep.info("scope",
             "the double-cover datum of full discriminant data is not computed; this check "
             "compares discriminant divisors and fiber ranks only");
    if (q1.twist().base_dim != q2.twist().base_dim) {
        rep.error("base-dimension", "forms live over different projective spaces");
        return rep;
    }
    const HomogeneousPoly d1 = discriminant(q1);
    const HomogeneousPoly d2 = discriminant(q2);
    if (d1.is_zero() || d2.is_zero()) {
        rep.error("degenerate-family", "identically vanishing discriminant");
        return rep;
    }
    if (d1.degree() != d2.degree()) {
        rep.fail("proportionality",
                 "discriminant degrees differ: " + std::to_string(d1.degree()) + " vs " +
                     std::to_string(d2.degree()),
                 {{"disc1", d1.to_string()}, {"disc2", d2.to_string()}});
        return rep;
    }
    const Scalar c2 = d2.coefficient(d1.leading_monomial());
    if (c2.is_zero() || d1 != d2.scaled(d1.leading_coefficient() / c2)) {
        rep.fail("proportionality", "discriminants are not proportional",
                 {{"disc1", d1.to_string()}, {"disc2", d2.to_string()}});
        return rep;
    }
    const Scalar c = d1.leading_coefficient() / c2;
    rep.constants()["proportionality"] = c.to_string();
    rep.info("proportionality", "disc(q1) = c * disc(q2) with c = " + c.to_string());

    if (sample_count == 0) {
        rep.info("skipped", "0 samples requested; fiber-rank comparison skipped");
        return rep;
    }
    const std::uint32_t p =
        q1.field().is_rational() ? kDefaultPrime : q1.field().p();
    TwistedQuadraticForm r1 = reduce_form_mod_p(q1, p);
    TwistedQuadraticForm r2 = reduce_form_mod_p(q2, p);
    if (q1.field().is_rational())
        rep.info("reduction", "fiber ranks sampled over the F_p reduction at p=" +
                                  std::to_string(p));
    const auto points = sample_discriminant_points(r1, sample_count, seed, p);
    std::size_t compared = 0;
    for (const auto& s : points) {
        const std::size_t k1 = r1.matrix().rank_at(s);
        const std::size_t k2 = r2.matrix().rank_at(s);
        if (k1 != k2) {
            rep.fail("fiber-rank",
                     "fiber ranks differ on the common discriminant: " + std::to_string(k1) +
                         " vs " + std::to_string(k2),
                     {{"point", point_json(s)}});
            return rep;
        }
        ++compared;
    }
    rep.info("fiber-rank", "fiber ranks agree at " + std::to_string(compared) +
                               " sampled discriminant points");
    return rep;
}

}  // namespace conicliff
