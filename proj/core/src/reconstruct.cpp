#include "conicliff/reconstruct.hpp"

#include <sstream>

namespace conicliff {

namespace {

constexpr std::array<std::pair<std::size_t, std::size_t>, 3> kWedgePairs{
    std::pair<std::size_t, std::size_t>{1, 2}, {1, 3}, {2, 3}};   // basis slots of R0

AlgebraElement delta_element(std::size_t slot, const Field& field, std::uint32_t nv) {
    AlgebraElement e{HomogeneousPoly::zero(field, nv), HomogeneousPoly::zero(field, nv),
                     HomogeneousPoly::zero(field, nv), HomogeneousPoly::zero(field, nv)};
    e[slot] = HomogeneousPoly::constant(Scalar::one(field), nv);
    return e;
}

}  // namespace

AlgebraWithSplitting splitting_from_cliff0(const EvenCliffordAlgebra& a) {
    return AlgebraWithSplitting{a.field, a.nvars(), a.summand_degrees, a.product, a.twist};
}

Report validate_splitting(const AlgebraWithSplitting& r) {
    Report rep("reconstruct.validate_splitting");
    const std::uint32_t nv = r.nvars;
    if (r.summand_degrees[0] != 0)
        rep.fail("unit-degree", "unit summand must have degree 0");
    for (std::size_t j = 0; j < 4; ++j) {
        const AlgebraElement want = delta_element(j, r.field, nv);
        if (r.product[0][j] != want || r.product[j][0] != want)
            rep.fail("unit", "basis slot " + std::to_string(j) + " violates the unit laws");
    }
    for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = 0; j < 4; ++j)
            for (std::size_t k = 0; k < 4; ++k) {
                const auto& c = r.product[i][j][k];
                if (c.is_zero()) continue;
                const int want =
                    r.summand_degrees[k] - r.summand_degrees[i] - r.summand_degrees[j];
                if (want < 0 || c.degree() != want)
                    rep.fail("degree-bookkeeping",
                             "structure constant (" + std::to_string(i) + "," +
                                 std::to_string(j) + ")->" + std::to_string(k) +
                                 " has degree " + std::to_string(c.degree()) + ", expected " +
                                 std::to_string(want));
            }
    for (std::size_t i = 1; i < 4; ++i)
        for (std::size_t j = i + 1; j < 4; ++j)
            if (r.product[i][j][0] != r.product[j][i][0])
                rep.fail("commutator-unit-component",
                         "[r" + std::to_string(i) + ",r" + std::to_string(j) +
                             "] leaves the commutator subsheaf condition");
    return rep;
}

CommutatorMap commutator_map(const AlgebraWithSplitting& r) {
    CommutatorMap cm{r.field, r.nvars, {}};
    for (auto& row : cm.coeff)
        for (auto& c : row) c = HomogeneousPoly::zero(r.field, r.nvars);
    for (std::size_t p = 0; p < 3; ++p) {
        const auto [i, j] = kWedgePairs[p];
        const HomogeneousPoly unit_defect = r.product[i][j][0] - r.product[j][i][0];
        if (!unit_defect.is_zero())
            throw ReconstructError(
                "not a pointwise Clifford candidate: commutator [r" + std::to_string(i) +
                ",r" + std::to_string(j) + "] has unit component " + unit_defect.to_string());
        for (std::size_t m = 0; m < 3; ++m)
            cm.coeff[p][m] = r.product[i][j][m + 1] - r.product[j][i][m + 1];
    }
    return cm;
}

HomogeneousPoly CommutatorMap::det() const {
    PolyMatrix m(3, 3, field, nvars);
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = 0; j < 3; ++j) m.at(i, j) = coeff[i][j];
    return det3(m);
}

ReconstructionResult reconstruct_form(const AlgebraWithSplitting& r) {
    ReconstructionResult out{Report("reconstruct.form"), std::nullopt};
    Report& rep = out.report;

    CommutatorMap cm{r.field, r.nvars, {}};
    try {
        cm = commutator_map(r);
    } catch (const ReconstructError& e) {
        rep.error("commutator-unit-component", e.what());
        return out;
    }

    // Transport wedge rows to dual-basis rows: r2^r3 -> +r1*, r1^r3 -> -r2*,
    // r1^r2 -> +r3*.
    PolyMatrix q(3, 3, r.field, r.nvars);
    for (std::size_t m = 0; m < 3; ++m) {
        q.at(0, m) = cm.coeff[2][m];    // [r2, r3]
        q.at(1, m) = -cm.coeff[1][m];   // -[r1, r3]
        q.at(2, m) = cm.coeff[0][m];    // [r1, r2]
    }

    if (q.is_zero()) {
        rep.error("vanishing-form",
                  "vanishing reconstructed form: all commutators are zero "
                  "(commutative input is excluded by the nowhere-vanishing hypothesis)");
        return out;
    }

    if (!q.is_symmetric()) {
        nlohmann::json defect = nlohmann::json::array();
        for (std::size_t i = 0; i < 3; ++i) {
            nlohmann::json row = nlohmann::json::array();
            for (std::size_t j = 0; j < 3; ++j) {
                HomogeneousPoly d = q.at(i, j) - q.at(j, i);
                row.push_back(d.scaled(Scalar::from_int(1, r.field) /
                                       Scalar::from_int(2, r.field))
                                  .to_string());
            }
            defect.push_back(row);
        }
        rep.error("not-pointwise-clifford",
                  "reconstructed bilinear map is not symmetric; antisymmetric defect attached",
                  {{"antisymmetric_defect", defect}});
        return out;
    }

    SplitTwist twist;
    twist.base_dim = r.base_dim();
    for (int i = 0; i < 3; ++i) twist.a[i] = r.summand_degrees[i + 1];
    twist.l = twist.sum_a();
    try {
        out.form = TwistedQuadraticForm::make(twist, q);
    } catch (const FormError& e) {
        rep.error("invalid-form", e.what());
        return out;
    }
    rep.info("reconstructed", "commutator map factors through a symmetric form",
             {{"twist_a", twist.a}, {"twist_l", twist.l}});
    return out;
}

Report roundtrip_check(const TwistedQuadraticForm& q) {
    Report rep("reconstruct.roundtrip");
    rep.constants()["c"] = -2;
    rep.constants()["det_law"] = -8;

    const EvenCliffordAlgebra a = cliff0(q);
    ReconstructionResult rec = reconstruct_form(splitting_from_cliff0(a));
    rep.merge(rec.report);
    if (!rec.form) return rep;
    const TwistedQuadraticForm& qr = *rec.form;
    const TwistedQuadraticForm qn = normalized_twist(q);

    // (a) Twist data agree through the built-in index reversal.
    bool twists_match = qr.twist().l == qn.twist().l;
    for (int i = 0; i < 3; ++i)
        twists_match = twists_match && qr.twist().a[i] == qn.twist().a[2 - i];
    if (twists_match)
        rep.info("twist-data", "reconstructed twist equals the normalized twist (reversed order)",
                 {{"a", qr.twist().a}, {"l", qr.twist().l}});
    else
        rep.fail("twist-data", "reconstructed twist differs from the normalized twist",
                 {{"reconstructed_a", qr.twist().a},
                  {"reconstructed_l", qr.twist().l},
                  {"normalized_a", qn.twist().a},
                  {"normalized_l", qn.twist().l}});

    // (b) Exact congruence q_R = c G^T M G with c = -2 and G the
    // index-reversing permutation times alternating signs.
    bool congruent = true;
    for (std::size_t m = 0; m < 3 && congruent; ++m)
        for (std::size_t k = 0; k < 3 && congruent; ++k) {
            const long sign = ((m + k) % 2 == 0) ? 1 : -1;
            const HomogeneousPoly want =
                qn.matrix().at(2 - m, 2 - k).scaled(Scalar::from_int(-2 * sign, q.field()));
            congruent = qr.matrix().at(m, k) == want;
        }
    if (congruent)
        rep.info("congruence", "q_R = -2 * G^T M G holds as an exact polynomial identity");
    else {
        nlohmann::json lhs = nlohmann::json::array(), rhs = nlohmann::json::array();
        for (std::size_t i = 0; i < 3; ++i) {
            nlohmann::json lrow = nlohmann::json::array(), rrow = nlohmann::json::array();
            for (std::size_t j = 0; j < 3; ++j) {
                lrow.push_back(qr.matrix().at(i, j).to_string());
                rrow.push_back(qn.matrix().at(i, j).to_string());
            }
            lhs.push_back(lrow);
            rhs.push_back(rrow);
        }
        rep.fail("congruence", "q_R does not match -2 * G^T M G",
                 {{"reconstructed_matrix", lhs}, {"normalized_matrix", rhs}});
    }

    // (c) det q_R = -8 det q, hence equal discriminant divisors.
    const HomogeneousPoly want_disc = discriminant(q).scaled(Scalar::from_int(-8, q.field()));
    if (discriminant(qr) == want_disc)
        rep.info("determinant-law", "det q_R = -8 det q holds exactly");
    else
        rep.fail("determinant-law", "det q_R != -8 det q",
                 {{"det_reconstructed", discriminant(qr).to_string()},
                  {"det_source", discriminant(q).to_string()}});
    return rep;
}

Report is_pointwise_clifford(const AlgebraWithSplitting& r, std::uint32_t sample_count,
                             std::uint64_t seed) {
    Report rep("reconstruct.is_pointwise_clifford");
    rep.merge(validate_splitting(r));
    if (!rep.passed()) return rep;

    ReconstructionResult rec = reconstruct_form(r);
    rep.merge(rec.report);
    if (!rec.form) return rep;

    if (sample_count == 0) {
        rep.info("skipped", "0 samples requested; pointwise class comparison skipped");
        return rep;
    }

    const EvenCliffordAlgebra model = cliff0(*rec.form);
    std::mt19937_64 rng(seed);
    for (std::uint32_t s = 0; s < sample_count; ++s) {
        const std::vector<Scalar> pt = random_projective_point(r.field, r.nvars, rng);
        nlohmann::json coords = nlohmann::json::array();
        for (const auto& c : pt) coords.push_back(c.to_string());
        try {
            const FiberAlgebraClass got =
                classify_evaluated_algebra(evaluate_algebra(r.product, r.field, pt));
            const FiberAlgebraClass want = classify_fiber_algebra(model, pt);
            if (got != want) {
                rep.fail("class-mismatch",
                         "fiber class " + fiber_algebra_class_name(got) +
                             " does not match the reconstructed model " +
                             fiber_algebra_class_name(want),
                         {{"point", coords}});
                return rep;
            }
        } catch (const CliffordError& e) {
            rep.fail("classification", e.what(), {{"point", coords}});
            return rep;
        }
    }
    rep.info("sampled-classes",
             "evaluated algebra matches the Clifford algebra of the reconstructed form at " +
                 std::to_string(sample_count) + " sampled points");
    return rep;
}

}  // namespace conicliff
