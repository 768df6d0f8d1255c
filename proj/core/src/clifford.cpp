#include "conicliff/clifford.hpp"

#include <optional>
#include <sstream>

namespace conicliff {

const std::array<const char*, 4> kEvenBasisLabels{"1", "f12", "f13", "f23"};
const std::array<const char*, 4> kOddBasisLabels{"g1", "g2", "g3", "g123"};

namespace {

// Basis slots 1..3 of Cliff0 are the ordered wedge pairs.
constexpr std::array<std::pair<std::size_t, std::size_t>, 4> kPairs{
    std::pair<std::size_t, std::size_t>{0, 0},   // unused slot 0
    {0, 1}, {0, 2}, {1, 2}};

// Wedge slot and sign for e_u ^ e_v; nullopt when u == v.
std::optional<std::pair<std::size_t, int>> wedge_slot(std::size_t u, std::size_t v) {
    if (u == v) return std::nullopt;
    if (u < v) {
        for (std::size_t s = 1; s <= 3; ++s)
            if (kPairs[s] == std::make_pair(u, v)) return {{s, +1}};
    }
    auto r = wedge_slot(v, u);
    return {{r->first, -r->second}};
}

int levi_civita(std::size_t i, std::size_t j, std::size_t k) {
    if (i == j || j == k || i == k) return 0;
    if ((i == 0 && j == 1 && k == 2) || (i == 1 && j == 2 && k == 0) ||
        (i == 2 && j == 0 && k == 1))
        return +1;
    return -1;
}

std::string element_to_string(const AlgebraElement& e,
                              const std::array<const char*, 4>& labels) {
    std::ostringstream os;
    bool any = false;
    for (std::size_t k = 0; k < 4; ++k) {
        if (e[k].is_zero()) continue;
        if (any) os << " + ";
        os << "(" << e[k].to_string() << ")*" << labels[k];
        any = true;
    }
    return any ? os.str() : "0";
}

AlgebraElement zero_element_of(const Field& field, std::uint32_t nvars) {
    return {HomogeneousPoly::zero(field, nvars), HomogeneousPoly::zero(field, nvars),
            HomogeneousPoly::zero(field, nvars), HomogeneousPoly::zero(field, nvars)};
}

AlgebraElement delta_element(std::size_t slot, const Field& field, std::uint32_t nvars) {
    AlgebraElement e = zero_element_of(field, nvars);
    e[slot] = HomogeneousPoly::constant(Scalar::one(field), nvars);
    return e;
}

void check_table_degrees(Report& rep, const StructureTable& table,
                         const std::array<int, 4>& left_deg,
                         const std::array<int, 4>& right_deg,
                         const std::array<int, 4>& target_deg, const char* what) {
    for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = 0; j < 4; ++j)
            for (std::size_t k = 0; k < 4; ++k) {
                const auto& c = table[i][j][k];
                if (c.is_zero()) continue;
                const int want = target_deg[k] - left_deg[i] - right_deg[j];
                if (want < 0 || c.degree() != want)
                    rep.fail("degree-bookkeeping",
                             std::string(what) + " constant (" + std::to_string(i) + "," +
                                 std::to_string(j) + ")->" + std::to_string(k) +
                                 " has degree " + std::to_string(c.degree()) + ", expected " +
                                 std::to_string(want));
            }
}

}  // namespace

std::string fiber_algebra_class_name(FiberAlgebraClass c) {
    switch (c) {
        case FiberAlgebraClass::Matrix2: return "Matrix2";
        case FiberAlgebraClass::QuiverPath: return "QuiverPath";
        case FiberAlgebraClass::Exterior2: return "Exterior2";
    }
    return "?";
}

AlgebraElement EvenCliffordAlgebra::basis_element(std::size_t i) const {
    return delta_element(i, field, nvars());
}

AlgebraElement EvenCliffordAlgebra::zero_element() const {
    return zero_element_of(field, nvars());
}

AlgebraElement EvenCliffordAlgebra::multiply(const AlgebraElement& x,
                                             const AlgebraElement& y) const {
    AlgebraElement out = zero_element_of(field, nvars());
    for (std::size_t i = 0; i < 4; ++i) {
        if (x[i].is_zero()) continue;
        for (std::size_t j = 0; j < 4; ++j) {
            if (y[j].is_zero()) continue;
            const HomogeneousPoly xy = x[i] * y[j];
            for (std::size_t k = 0; k < 4; ++k)
                if (!product[i][j][k].is_zero()) out[k] += xy * product[i][j][k];
        }
    }
    return out;
}

EvenCliffordAlgebra cliff0(const TwistedQuadraticForm& q, MultNormalization norm) {
    const SplitTwist& t = q.twist();
    EvenCliffordAlgebra a{t, q.field(),
                          {0, t.l - t.a[0] - t.a[1], t.l - t.a[0] - t.a[2],
                           t.l - t.a[1] - t.a[2]},
                          {}, norm};
    const std::uint32_t nv = t.nvars();
    auto b = [&](std::size_t i, std::size_t j) -> const HomogeneousPoly& {
        return q.matrix().at(i, j);
    };

    for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = 0; j < 4; ++j) a.product[i][j] = zero_element_of(q.field(), nv);

    // Unit row and column.
    for (std::size_t j = 0; j < 4; ++j) {
        a.product[0][j] = delta_element(j, q.field(), nv);
        a.product[j][0] = delta_element(j, q.field(), nv);
    }

    // (e_i ^ e_j) * (e_k ^ e_m): single and double contractions against b.
    for (std::size_t s = 1; s <= 3; ++s)
        for (std::size_t u = 1; u <= 3; ++u) {
            const auto [i, j] = kPairs[s];
            const auto [k, m] = kPairs[u];
            AlgebraElement& out = a.product[s][u];

            HomogeneousPoly unit_part = b(i, m) * b(j, k) - b(i, k) * b(j, m);
            if (norm == MultNormalization::Literal)
                unit_part = unit_part.scaled(Scalar::from_int(2, q.field()));
            out[0] += unit_part;

            struct Contribution {
                std::size_t wu, wv;
                const HomogeneousPoly* coeff;
                int sign;
            };
            const Contribution contributions[4] = {
                {i, m, &b(j, k), +1},
                {i, k, &b(j, m), -1},
                {j, m, &b(i, k), -1},
                {j, k, &b(i, m), +1},
            };
            for (const auto& c : contributions) {
                auto slot = wedge_slot(c.wu, c.wv);
                if (!slot || c.coeff->is_zero()) continue;
                HomogeneousPoly term = *c.coeff;
                if (c.sign * slot->second < 0) term = -term;
                out[slot->first] += term;
            }
        }
    return a;
}

OddCliffordModule cliff_odd(const TwistedQuadraticForm& q) {
    const SplitTwist& t = q.twist();
    OddCliffordModule m{t, q.field(),
                        {-t.a[0], -t.a[1], -t.a[2], t.l - t.sum_a()},
                        {}, {}, {}};
    const std::uint32_t nv = t.nvars();
    auto b = [&](std::size_t i, std::size_t j) -> const HomogeneousPoly& {
        return q.matrix().at(i, j);
    };
    auto zero = [&] { return zero_element_of(q.field(), nv); };

    for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = 0; j < 4; ++j) {
            m.left_action[i][j] = zero();
            m.right_action[i][j] = zero();
            m.pairing[i][j] = zero();
        }

    // The unit acts as the identity on both sides.
    for (std::size_t tgt = 0; tgt < 4; ++tgt) {
        m.left_action[0][tgt] = delta_element(tgt, q.field(), nv);
        m.right_action[tgt][0] = delta_element(tgt, q.field(), nv);
    }

    // Double contraction of a wedge pair into the volume element:
    // (e_i ^ e_j) . g123 = e_i -| (e_j -| (e1^e2^e3)).
    auto volume_action = [&](std::size_t i, std::size_t j) {
        AlgebraElement out = zero();
        struct Step {
            int sign;
            std::size_t drop;          // b(j, drop)
            std::size_t ru, rv;        // remaining wedge pair
        };
        const Step steps[3] = {{+1, 0, 1, 2}, {-1, 1, 0, 2}, {+1, 2, 0, 1}};
        for (const auto& s : steps) {
            HomogeneousPoly outer = b(j, s.drop);
            if (outer.is_zero()) continue;
            HomogeneousPoly pos = outer * b(i, s.ru);   // -> g_{rv}
            HomogeneousPoly neg = outer * b(i, s.rv);   // -> g_{ru}
            if (s.sign < 0) {
                pos = -pos;
                neg = -neg;
            }
            out[s.rv] += pos;
            out[s.ru] -= neg;
        }
        return out;
    };

    for (std::size_t s = 1; s <= 3; ++s) {
        const auto [i, j] = kPairs[s];
        // f_{ij} . g_k and g_k . f_{ij}
        for (std::size_t k = 0; k < 3; ++k) {
            AlgebraElement left = zero(), right = zero();
            left[i] += b(j, k);
            left[j] -= b(i, k);
            right[j] += b(i, k);
            right[i] -= b(j, k);
            const int eps = levi_civita(i, j, k);
            if (eps != 0) {
                HomogeneousPoly one = HomogeneousPoly::constant(
                    Scalar::from_int(eps, q.field()), nv);
                left[3] += one;
                right[3] += one;
            }
            m.left_action[s][k] = left;
            m.right_action[k][s] = right;
        }
        // The volume element is central: both actions agree on g123.
        m.left_action[s][3] = volume_action(i, j);
        m.right_action[3][s] = m.left_action[s][3];
    }

    // Pairing into Cliff2 (even basis, degrees shifted by -l).
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = 0; j < 3; ++j) {
            AlgebraElement out = zero();
            out[0] += b(i, j);
            if (auto slot = wedge_slot(i, j)) {
                HomogeneousPoly one = HomogeneousPoly::constant(
                    Scalar::from_int(slot->second, q.field()), nv);
                out[slot->first] += one;
            }
            m.pairing[i][j] = out;
        }
    for (std::size_t i = 0; i < 3; ++i) {
        AlgebraElement out = zero();
        out[3] += b(i, 0);   // e_i -| (e1^e2^e3) = b_i1 e2^e3 - b_i2 e1^e3 + b_i3 e1^e2
        out[2] -= b(i, 1);
        out[1] += b(i, 2);
        m.pairing[i][3] = out;
        m.pairing[3][i] = out;
    }
    {
        AlgebraElement out = zero();
        out[0] -= det3(q.matrix());
        m.pairing[3][3] = out;
    }
    return m;
}

Report verify_even_structure(const EvenCliffordAlgebra& a) {
    Report rep("clifford.even_structure");
    const std::uint32_t nv = a.nvars();
    for (std::size_t j = 0; j < 4; ++j) {
        const AlgebraElement want = delta_element(j, a.field, nv);
        if (a.product[0][j] != want)
            rep.fail("unit", std::string("1*") + kEvenBasisLabels[j] + " != " +
                                 kEvenBasisLabels[j]);
        if (a.product[j][0] != want)
            rep.fail("unit", std::string(kEvenBasisLabels[j]) + "*1 != " +
                                 kEvenBasisLabels[j]);
    }
    check_table_degrees(rep, a.product, a.summand_degrees, a.summand_degrees,
                        a.summand_degrees, "even product");
    for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = 0; j < 4; ++j)
            if (a.product[i][j][0] != a.product[j][i][0])
                rep.fail("commutator-unit-component",
                         std::string("[") + kEvenBasisLabels[i] + "," + kEvenBasisLabels[j] +
                             "] has nonzero unit component");
    return rep;
}

Report verify_associativity(const EvenCliffordAlgebra& a) {
    Report rep("clifford.associativity");
    for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = 0; j < 4; ++j)
            for (std::size_t k = 0; k < 4; ++k) {
                const AlgebraElement lhs =
                    a.multiply(a.multiply(a.basis_element(i), a.basis_element(j)),
                               a.basis_element(k));
                const AlgebraElement rhs =
                    a.multiply(a.basis_element(i),
                               a.multiply(a.basis_element(j), a.basis_element(k)));
                if (lhs != rhs)
                    rep.fail("associativity",
                             std::string("(") + kEvenBasisLabels[i] + "*" +
                                 kEvenBasisLabels[j] + ")*" + kEvenBasisLabels[k] +
                                 " != " + kEvenBasisLabels[i] + "*(" + kEvenBasisLabels[j] +
                                 "*" + kEvenBasisLabels[k] + ")",
                             {{"triple",
                               {kEvenBasisLabels[i], kEvenBasisLabels[j], kEvenBasisLabels[k]}},
                              {"left_associated", element_to_string(lhs, kEvenBasisLabels)},
                              {"right_associated", element_to_string(rhs, kEvenBasisLabels)}});
            }
    return rep;
}

namespace {

// Generic action of an even element on a module element through a table.
AlgebraElement apply_table(const StructureTable& table, const AlgebraElement& x,
                           const AlgebraElement& y, const Field& field, std::uint32_t nv) {
    AlgebraElement out = zero_element_of(field, nv);
    for (std::size_t i = 0; i < 4; ++i) {
        if (x[i].is_zero()) continue;
        for (std::size_t j = 0; j < 4; ++j) {
            if (y[j].is_zero()) continue;
            const HomogeneousPoly xy = x[i] * y[j];
            for (std::size_t k = 0; k < 4; ++k)
                if (!table[i][j][k].is_zero()) out[k] += xy * table[i][j][k];
        }
    }
    return out;
}

}  // namespace

Report verify_module_axioms(const EvenCliffordAlgebra& a, const OddCliffordModule& m) {
    Report rep("clifford.module_axioms");
    const Field& F = a.field;
    const std::uint32_t nv = a.nvars();
    auto delta = [&](std::size_t s) { return delta_element(s, F, nv); };

    std::array<int, 4> cliff2_degrees;
    for (std::size_t k = 0; k < 4; ++k) cliff2_degrees[k] = a.summand_degrees[k] - a.twist.l;
    check_table_degrees(rep, m.left_action, a.summand_degrees, m.summand_degrees,
                        m.summand_degrees, "left action");
    check_table_degrees(rep, m.right_action, m.summand_degrees, a.summand_degrees,
                        m.summand_degrees, "right action");
    check_table_degrees(rep, m.pairing, m.summand_degrees, m.summand_degrees, cliff2_degrees,
                        "pairing");

    auto describe = [](const char* pattern, std::size_t x, std::size_t y, std::size_t z,
                       bool x_odd, bool y_odd, bool z_odd) {
        auto name = [&](std::size_t s, bool odd) {
            return std::string(odd ? kOddBasisLabels[s] : kEvenBasisLabels[s]);
        };
        std::string out = pattern;
        out += ": (" + name(x, x_odd) + ", " + name(y, y_odd) + ", " + name(z, z_odd) + ")";
        return out;
    };

    for (std::size_t u = 0; u < 4; ++u)
        for (std::size_t v = 0; v < 4; ++v)
            for (std::size_t w = 0; w < 4; ++w) {
                // (u*v)*g = u*(v*g)
                AlgebraElement lhs = apply_table(m.left_action, a.product[u][v], delta(w), F, nv);
                AlgebraElement rhs = apply_table(m.left_action, delta(u),
                                                 m.left_action[v][w], F, nv);
                if (lhs != rhs)
                    rep.fail("left-associativity", describe("(u*v)*g != u*(v*g)", u, v, w,
                                                            false, false, true));
                // (g*u)*v = g*(u*v)
                lhs = apply_table(m.right_action, m.right_action[w][u], delta(v), F, nv);
                rhs = apply_table(m.right_action, delta(w), a.product[u][v], F, nv);
                if (lhs != rhs)
                    rep.fail("right-associativity", describe("(g*u)*v != g*(u*v)", w, u, v,
                                                             true, false, false));
                // (u*g)*v = u*(g*v)
                lhs = apply_table(m.right_action, m.left_action[u][w], delta(v), F, nv);
                rhs = apply_table(m.left_action, delta(u), m.right_action[w][v], F, nv);
                if (lhs != rhs)
                    rep.fail("bimodule-compatibility", describe("(u*g)*v != u*(g*v)", u, w, v,
                                                                false, true, false));
                // (g*u) ~ g' = g ~ (u*g')  (pairing is Cliff0-balanced)
                lhs = apply_table(m.pairing, m.right_action[w][u], delta(v), F, nv);
                rhs = apply_table(m.pairing, delta(w), m.left_action[u][v], F, nv);
                if (lhs != rhs)
                    rep.fail("pairing-balance", describe("(g*u)~g' != g~(u*g')", w, u, v,
                                                         true, false, true));
            }
    return rep;
}

EvaluatedAlgebra evaluate_algebra(const StructureTable& table, const Field& field,
                                  std::span<const Scalar> point) {
    EvaluatedAlgebra out{field, {}};
    for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = 0; j < 4; ++j)
            for (std::size_t k = 0; k < 4; ++k)
                out.table[i][j][k] = table[i][j][k].eval(point);
    return out;
}

std::size_t radical_dimension(const EvaluatedAlgebra& a) {
    ScalarMatrix trace_form(4, 4, a.field);
    for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = 0; j < 4; ++j) {
            Scalar t = Scalar::zero(a.field);
            // tr(L_i L_j) = sum_{k,u} (e_i e_u)_k (e_j e_k)_u
            for (std::size_t k = 0; k < 4; ++k)
                for (std::size_t u = 0; u < 4; ++u)
                    t += a.table[i][u][k] * a.table[j][k][u];
            trace_form.at(i, j) = t;
        }
    return 4 - trace_form.rank();
}

FiberAlgebraClass classify_evaluated_algebra(const EvaluatedAlgebra& a) {
    switch (radical_dimension(a)) {
        case 0: return FiberAlgebraClass::Matrix2;
        case 2: return FiberAlgebraClass::QuiverPath;
        case 3: return FiberAlgebraClass::Exterior2;
        default:
            throw CliffordError("not a pointwise Clifford fiber (radical dimension " +
                                std::to_string(radical_dimension(a)) + ")");
    }
}

FiberAlgebraClass classify_fiber_algebra(const EvenCliffordAlgebra& a,
                                         std::span<const Scalar> point) {
    return classify_evaluated_algebra(evaluate_algebra(a.product, a.field, point));
}

Report verify_bimodule_tensor_at(const TwistedQuadraticForm& q,
                                 std::span<const Scalar> point, ParityPair pair) {
    Report rep("clifford.bimodule_tensor");
    const EvenCliffordAlgebra a = cliff0(q);
    const OddCliffordModule m = cliff_odd(q);
    const Field& F = q.field();

    const EvaluatedAlgebra even = evaluate_algebra(a.product, F, point);
    const EvaluatedAlgebra left = evaluate_algebra(m.left_action, F, point);
    const EvaluatedAlgebra right = evaluate_algebra(m.right_action, F, point);
    const EvaluatedAlgebra pairing = evaluate_algebra(m.pairing, F, point);

    const auto* right_on_first = &right.table;   // x*a for x in the first factor
    const auto* left_on_second = &left.table;    // a*y for y in the second factor
    const auto* mult = &pairing.table;
    const char* label = "Cliff1 (x) Cliff1 -> Cliff2";
    switch (pair) {
        case ParityPair::OddOdd: break;
        case ParityPair::OddEven:
            left_on_second = &even.table;
            mult = &right.table;
            label = "Cliff1 (x) Cliff0 -> Cliff1";
            break;
        case ParityPair::EvenOdd:
            right_on_first = &even.table;
            mult = &left.table;
            label = "Cliff0 (x) Cliff1 -> Cliff1";
            break;
    }
    rep.info("setup", label);

    // Balancing relations (x*a) (x) y - x (x) (a*y) inside the 16-dim tensor.
    ScalarMatrix relations(64, 16, F);
    std::size_t row = 0;
    for (std::size_t x = 0; x < 4; ++x)
        for (std::size_t aa = 0; aa < 4; ++aa)
            for (std::size_t y = 0; y < 4; ++y, ++row) {
                for (std::size_t xp = 0; xp < 4; ++xp)
                    relations.at(row, xp * 4 + y) += (*right_on_first)[x][aa][xp];
                for (std::size_t yp = 0; yp < 4; ++yp)
                    relations.at(row, x * 4 + yp) -= (*left_on_second)[aa][y][yp];
            }
    const std::size_t tensor_dim = 16 - relations.rank();

    ScalarMatrix mult_map(16, 4, F);
    for (std::size_t x = 0; x < 4; ++x)
        for (std::size_t y = 0; y < 4; ++y)
            for (std::size_t t = 0; t < 4; ++t)
                mult_map.at(x * 4 + y, t) = (*mult)[x][y][t];

    // The multiplication must kill every balancing relation.
    bool descends = true;
    for (std::size_t r = 0; r < 64 && descends; ++r)
        for (std::size_t t = 0; t < 4; ++t) {
            Scalar s = Scalar::zero(F);
            for (std::size_t c = 0; c < 16; ++c) s += relations.at(r, c) * mult_map.at(c, t);
            if (!s.is_zero()) {
                descends = false;
                break;
            }
        }
    const std::size_t mult_rank = mult_map.rank();

    const int fiber = static_cast<int>(q.matrix().rank_at(point));
    if (fiber < 3) {
        rep.error("degenerate-point",
                  "fiber rank " + std::to_string(fiber) +
                      " < 3; tensor dimension measured without asserting",
                  {{"tensor_dimension", tensor_dim},
                   {"multiplication_rank", mult_rank},
                   {"fiber_rank", fiber}});
        return rep;
    }

    if (tensor_dim != 4)
        rep.fail("tensor-dimension",
                 "balanced tensor product has dimension " + std::to_string(tensor_dim) +
                     ", expected 4",
                 {{"tensor_dimension", tensor_dim}});
    else
        rep.info("tensor-dimension", "balanced tensor product has dimension 4");
    if (!descends)
        rep.fail("multiplication-descent", "multiplication does not kill the balancing relations");
    if (mult_rank != 4)
        rep.fail("multiplication-rank",
                 "multiplication map has rank " + std::to_string(mult_rank) + ", expected 4",
                 {{"multiplication_rank", mult_rank}});
    else if (descends && tensor_dim == 4)
        rep.info("isomorphism", "induced map on the tensor product is an isomorphism");
    return rep;
}

EvenCliffordAlgebra cliff_shift(const EvenCliffordAlgebra& a, int index_shift) {
    if (index_shift % 2 != 0)
        throw CliffordError("even algebra shifts by even Clifford index only");
    EvenCliffordAlgebra out = a;
    for (auto& d : out.summand_degrees) d -= (index_shift / 2) * a.twist.l;
    return out;
}

OddCliffordModule cliff_shift(const OddCliffordModule& m, int index_shift) {
    if (index_shift % 2 != 0)
        throw CliffordError("odd module shifts by even Clifford index only");
    OddCliffordModule out = m;
    for (auto& d : out.summand_degrees) d -= (index_shift / 2) * m.twist.l;
    return out;
}

}  // namespace conicliff
