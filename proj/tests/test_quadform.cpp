#include <doctest.h>

#include "test_support.hpp"

using namespace ts;

namespace {

ScalarMatrix random_invertible3(const Field& f, std::mt19937_64& rng) {
    for (;;) {
        ScalarMatrix g(3, 3, f);
        for (std::size_t i = 0; i < 3; ++i)
            for (std::size_t j = 0; j < 3; ++j) g.at(i, j) = Scalar::random(f, rng);
        if (!g.det().is_zero()) return g;
    }
}

// Exhaustive nonvanishing decision over all points of P^2(F_p), small p.
bool nowhere_vanishing_exhaustive(const TwistedQuadraticForm& q) {
    const Field f = q.field();
    const std::uint32_t p = f.p();
    auto vanishes_at = [&](const std::vector<Scalar>& pt) {
        for (std::size_t i = 0; i < 3; ++i)
            for (std::size_t j = i; j < 3; ++j)
                if (!q.matrix().at(i, j).eval(pt).is_zero()) return false;
        return true;
    };
    // Charts (1,y,z), (0,1,z), (0,0,1).
    for (std::uint64_t y = 0; y < p; ++y)
        for (std::uint64_t z = 0; z < p; ++z)
            if (vanishes_at(point({1, (long)y, (long)z}, f))) return false;
    for (std::uint64_t z = 0; z < p; ++z)
        if (vanishes_at(point({0, 1, (long)z}, f))) return false;
    return !vanishes_at(point({0, 0, 1}, f));
}

}  // namespace

TEST_CASE("form validation") {
    SUBCASE("type-5n degree pattern accepted") {
        std::mt19937_64 rng(1);
        const SplitTwist t = twist_for_tag(InstanceTag::Type5n);
        const TwistedQuadraticForm q = random_form(t, FQ(), rng);
        CHECK(validate_form(q.twist(), q.matrix()).passed());
        CHECK(q.matrix().at(0, 0).degree() == 1);
        CHECK(q.matrix().at(0, 1).degree() == 2);
        CHECK(q.matrix().at(0, 2).degree() == 2);
        CHECK(q.matrix().at(1, 1).degree() == 3);
        CHECK(q.matrix().at(1, 2).degree() == 3);
        CHECK(q.matrix().at(2, 2).degree() == 3);
    }

    SUBCASE("asymmetry rejected") {
        SplitTwist t;
        t.base_dim = 1;
        t.a = {1, 1, 1};
        t.l = 0;
        PolyMatrix m(3, 3, FQ(), 2);
        for (std::size_t i = 0; i < 3; ++i) m.at(i, i) = P("x0^2", FQ(), 2);
        m.at(0, 1) = P("x0*x1", FQ(), 2);
        m.at(1, 0) = P("x1^2", FQ(), 2);
        const Report rep = validate_form(t, m);
        CHECK(!rep.passed());
        CHECK(rep.findings()[0].kind == "asymmetry");
        CHECK_THROWS_AS(TwistedQuadraticForm::make(t, m), FormError);
    }

    SUBCASE("degree-pattern violations named") {
        SplitTwist t;
        t.base_dim = 1;
        t.a = {1, 1, 1};
        t.l = 0;
        PolyMatrix m(3, 3, FQ(), 2);
        for (std::size_t i = 0; i < 3; ++i) m.at(i, i) = P("x0", FQ(), 2);   // degree 1 != 2
        const Report rep = validate_form(t, m);
        CHECK(!rep.passed());
        bool saw = false;
        for (const auto& f : rep.findings()) saw = saw || f.kind == "degree-pattern";
        CHECK(saw);
    }

    SUBCASE("identically zero rejected; negative-degree slots must stay zero") {
        SplitTwist t;
        t.base_dim = 0;
        t.a = {0, 0, 5};
        t.l = 3;   // d(1,1) = -3 < 0
        PolyMatrix zero(3, 3, FQ(), 1);
        CHECK(!validate_form(t, zero).passed());
        PolyMatrix bad(3, 3, FQ(), 1);
        bad.at(0, 0) = P("1", FQ(), 1);   // nonzero in a negative-degree slot
        bad.at(2, 2) = P("7", FQ(), 1);
        CHECK(!validate_form(t, bad).passed());
    }
}

TEST_CASE("discriminant degrees and values") {
    std::mt19937_64 rng(2);

    SUBCASE("n=0 diagonal: product of the diagonal") {
        const TwistedQuadraticForm q = diag_form({2, 3, 5}, FQ());
        CHECK(discriminant(q) == P("30", FQ(), 1));
    }

    SUBCASE("tag twist data give the predicted degrees") {
        CHECK(expected_discriminant_degree(twist_for_tag(InstanceTag::Type5n)) == 7);
        CHECK(expected_discriminant_degree(twist_for_tag(InstanceTag::Mod12nb)) == 3);
        CHECK(expected_discriminant_degree(twist_for_tag(InstanceTag::Mod10na)) == 4);
        CHECK(expected_discriminant_degree(twist_for_tag(InstanceTag::Mod8nb)) == 5);
        const TwistedQuadraticForm q5 = random_form(twist_for_tag(InstanceTag::Type5n),
                                                    FP(), rng);
        const HomogeneousPoly d = discriminant(q5);
        REQUIRE(!d.is_zero());
        CHECK(d.degree() == 7);
    }

    SUBCASE("degree bookkeeping on random twists (property)") {
        for (int i = 0; i < 40; ++i) {
            const SplitTwist t = random_twist(i % 3, rng);
            const TwistedQuadraticForm q = random_form(t, FP(), rng);
            const HomogeneousPoly d = discriminant(q);
            if (!d.is_zero()) CHECK(d.degree() == expected_discriminant_degree(t));
        }
    }

    SUBCASE("congruence scales the discriminant by det(G)^2") {
        for (int i = 0; i < 20; ++i) {
            const SplitTwist t = random_twist(2, rng, /*equal_dual_degrees=*/true);
            const TwistedQuadraticForm q = random_form(t, FP(), rng);
            const ScalarMatrix g = random_invertible3(FP(), rng);
            const PolyMatrix gm = q.matrix().congruent(g);
            const Scalar dg = g.det();
            CHECK(det3(gm) == discriminant(q).scaled(dg * dg));
        }
    }
}

TEST_CASE("fiber ranks and classes") {
    SUBCASE("scalar examples") {
        const Field f = FQ();
        auto pt = point({1}, f);
        CHECK(fiber_rank(diag_form({1, 1, 1}, f), pt) ==
              std::pair<int, FiberClass>{3, FiberClass::SmoothConic});
        CHECK(fiber_rank(diag_form({1, 1, 0}, f), pt) ==
              std::pair<int, FiberClass>{2, FiberClass::LinePair});
        CHECK(fiber_rank(diag_form({1, 0, 0}, f), pt) ==
              std::pair<int, FiberClass>{1, FiberClass::DoubleLine});
    }

    SUBCASE("rank zero is an error") {
        SplitTwist t;
        t.base_dim = 1;
        t.a = {1, 1, 1};
        t.l = 1;
        PolyMatrix m(3, 3, FQ(), 2);
        for (std::size_t i = 0; i < 3; ++i) m.at(i, i) = P("x0", FQ(), 2);
        const TwistedQuadraticForm q = TwistedQuadraticForm::make(t, m);
        CHECK_THROWS_WITH_AS(fiber_rank(q, point({0, 1}, FQ())),
                             doctest::Contains("vanishes"), FormError);
        CHECK_THROWS_AS(fiber_rank(q, point({0, 0}, FQ())), FormError);
    }

    SUBCASE("type-5n fibers drop to rank 2 on the discriminant") {
        InstanceSpec spec;
        spec.tag = InstanceTag::Type5n;
        spec.field = FP();
        spec.seed = 42;
        const ConicBundleInstance inst = make_type_5n(spec);
        const auto pts = sample_discriminant_points(inst.q, 25, 7);
        REQUIRE(pts.size() >= 10);
        for (const auto& s : pts) CHECK(fiber_rank(inst.q, s).first == 2);
    }

    SUBCASE("rank invariance under rescaling and congruence at random points") {
        std::mt19937_64 rng(31);
        for (int i = 0; i < 20; ++i) {
            const SplitTwist t = random_twist(2, rng, true);
            const TwistedQuadraticForm q = random_form(t, FP(), rng);
            const auto pt = random_projective_point(FP(), 3, rng);
            const int r = static_cast<int>(q.matrix().rank_at(pt));

            PolyMatrix scaled(3, 3, FP(), 3);
            const Scalar c = Scalar::random_nonzero(FP(), rng);
            for (std::size_t u = 0; u < 3; ++u)
                for (std::size_t v = 0; v < 3; ++v)
                    scaled.at(u, v) = q.matrix().at(u, v).scaled(c);
            CHECK(scaled.rank_at(pt) == static_cast<std::size_t>(r));

            const ScalarMatrix g = random_invertible3(FP(), rng);
            CHECK(q.matrix().congruent(g).rank_at(pt) == static_cast<std::size_t>(r));
        }
    }
}

TEST_CASE("normalized twist") {
    std::mt19937_64 rng(4);

    SUBCASE("type-5n data") {
        const TwistedQuadraticForm q = random_form(twist_for_tag(InstanceTag::Type5n),
                                                   FQ(), rng);
        const TwistedQuadraticForm n = normalized_twist(q);
        CHECK(n.twist().a == std::array<int, 3>{-3, -2, -2});
        CHECK(n.twist().l == -7);
        CHECK(n.twist().l == n.twist().sum_a());
        for (std::size_t i = 0; i < 3; ++i)
            for (std::size_t j = 0; j < 3; ++j) CHECK(n.matrix().at(i, j) == q.matrix().at(i, j));
    }

    SUBCASE("already normalized forms are fixed points") {
        const TwistedQuadraticForm q0 = diag_form({1, 2, 3}, FQ());
        CHECK(normalized_twist(q0).twist() == q0.twist());
    }

    SUBCASE("idempotence on random twists (property)") {
        for (int i = 0; i < 30; ++i) {
            const SplitTwist t = random_twist(i % 3, rng);
            const TwistedQuadraticForm q = random_form(t, FP(), rng);
            const TwistedQuadraticForm n1 = normalized_twist(q);
            CHECK(n1.twist().l == n1.twist().sum_a());
            CHECK(normalized_twist(n1).twist() == n1.twist());
        }
    }
}

TEST_CASE("nowhere vanishing checks") {
    SUBCASE("shared factor on P^1 caught exactly") {
        SplitTwist t;
        t.base_dim = 1;
        t.a = {1, 1, 1};
        t.l = 0;
        PolyMatrix m(3, 3, FQ(), 2);
        for (std::size_t i = 0; i < 3; ++i)
            for (std::size_t j = 0; j < 3; ++j) m.at(i, j) = P("x0*x1", FQ(), 2);
        m.at(0, 0) = P("x0^2", FQ(), 2);
        const TwistedQuadraticForm q = TwistedQuadraticForm::make(t, m);
        const Report rep = nowhere_vanishing_exact_p1(q);
        CHECK(!rep.passed());
        CHECK(rep.findings()[0].kind == "common-factor");
        CHECK(rep.findings()[0].data["gcd"] == "x0");
    }

    SUBCASE("exact mode demands P^1") {
        const TwistedQuadraticForm q = diag_form({1, 1, 1}, FQ());
        CHECK(nowhere_vanishing_exact_p1(q).verdict() == Verdict::Error);
    }

    SUBCASE("coordinate diagonal over P^2 passes montecarlo") {
        SplitTwist t;
        t.base_dim = 2;
        t.a = {1, 1, 1};
        t.l = 1;
        PolyMatrix m(3, 3, FQ(), 3);
        m.at(0, 0) = P("x0", FQ(), 3);
        m.at(1, 1) = P("x1", FQ(), 3);
        m.at(2, 2) = P("x2", FQ(), 3);
        const TwistedQuadraticForm q = TwistedQuadraticForm::make(t, m);
        MonteCarloParams params;
        params.samples = 150;
        CHECK(nowhere_vanishing_montecarlo(q, params).passed());
    }

    SUBCASE("montecarlo finds planted common zeros over extensions") {
        // Entries all share the conic x0^2 + x1^2 + x2^2, which has points
        // over F_p for every odd p. Detection needs sample counts on the
        // order of p, so this check runs at a small prime.
        SplitTwist t;
        t.base_dim = 2;
        t.a = {1, 1, 1};
        t.l = 0;
        PolyMatrix m(3, 3, FP(31), 3);
        const HomogeneousPoly c = P("x0^2 + x1^2 + x2^2", FP(31), 3);
        for (std::size_t i = 0; i < 3; ++i)
            for (std::size_t j = 0; j < 3; ++j) m.at(i, j) = c;
        const TwistedQuadraticForm q = TwistedQuadraticForm::make(t, m);
        MonteCarloParams params;
        params.samples = 4000;
        const Report rep = nowhere_vanishing_montecarlo(q, params);
        CHECK(!rep.passed());
        CHECK(rep.findings()[0].kind == "common-zero");
    }

    SUBCASE("montecarlo agrees with the exhaustive oracle at small p") {
        for (std::uint64_t seed : {1ull, 2ull, 3ull}) {
            InstanceSpec spec;
            spec.tag = InstanceTag::Mod12nb;
            spec.field = FP(11);
            spec.seed = seed;
            const ConicBundleInstance inst = make_instance(spec);
            CHECK(nowhere_vanishing_exhaustive(inst.q));
            MonteCarloParams params;
            params.samples = 400;
            CHECK(nowhere_vanishing_montecarlo(inst.q, params).passed());
        }
    }

    SUBCASE("type-5n builder output over the default prime passes") {
        InstanceSpec spec;
        spec.tag = InstanceTag::Type5n;
        spec.field = FP();
        spec.seed = 5;
        const ConicBundleInstance inst = make_type_5n(spec);
        MonteCarloParams params;
        params.samples = 300;
        CHECK(nowhere_vanishing_montecarlo(inst.q, params).passed());
    }

    SUBCASE("samples = 0 skips the probabilistic part") {
        const TwistedQuadraticForm q = diag_form({1, 1, 1}, FQ());
        MonteCarloParams params;
        params.samples = 0;
        const Report rep = nowhere_vanishing_montecarlo(q, params);
        CHECK(rep.passed());
        CHECK(rep.findings()[0].kind == "skipped");
    }
}

TEST_CASE("pointwise conic equivalence") {
    const Field f = FQ();
    auto pt = point({1}, f);

    SUBCASE("rank-3 pair over Q with matching square classes") {
        const Report rep =
            equivalent_conics_at(diag_form({1, 1, 1}, f), diag_form({1, 1, 4}, f), pt);
        CHECK(rep.passed());
        bool refined = false;
        for (const auto& g : rep.findings())
            if (g.kind == "q-rational-refinement") {
                refined = true;
                CHECK(g.data["same_square_class"] == true);
            }
        CHECK(refined);
    }

    SUBCASE("square-class refinement can differ while the verdict passes") {
        const Report rep =
            equivalent_conics_at(diag_form({1, 1, 1}, f), diag_form({1, 1, 2}, f), pt);
        CHECK(rep.passed());   // geometric verdict is rank-based
        for (const auto& g : rep.findings())
            if (g.kind == "q-rational-refinement")
                CHECK(g.data["same_square_class"] == false);
    }

    SUBCASE("rank mismatch fails") {
        const Report rep =
            equivalent_conics_at(diag_form({1, 1, 1}, f), diag_form({1, 1, 0}, f), pt);
        CHECK(!rep.passed());
    }

    SUBCASE("rank zero at the point is an error report") {
        SplitTwist t;
        t.base_dim = 1;
        t.a = {1, 1, 1};
        t.l = 1;
        PolyMatrix m(3, 3, FQ(), 2);
        for (std::size_t i = 0; i < 3; ++i) m.at(i, i) = P("x0", FQ(), 2);
        const TwistedQuadraticForm q = TwistedQuadraticForm::make(t, m);
        const TwistedQuadraticForm r = TwistedQuadraticForm::make(t, m);
        CHECK(equivalent_conics_at(q, r, point({0, 1}, FQ())).verdict() == Verdict::Error);
    }

    SUBCASE("form is pointwise equivalent to its normalized twist") {
        std::mt19937_64 rng(6);
        const SplitTwist t = random_twist(2, rng);
        const TwistedQuadraticForm q = random_form(t, FP(), rng);
        const TwistedQuadraticForm n = normalized_twist(q);
        for (int i = 0; i < 50; ++i) {
            const auto s = random_projective_point(FP(), 3, rng);
            if (q.matrix().rank_at(s) == 0) continue;
            CHECK(equivalent_conics_at(q, n, s).passed());
        }
    }
}
