#include "conicliff/straightening.hpp"

#include <bit>

namespace conicliff {

namespace {

constexpr std::array<std::size_t, 4> kEvenMasks{0b000, 0b011, 0b101, 0b110};
constexpr std::array<std::size_t, 4> kOddMasks{0b001, 0b010, 0b100, 0b111};

std::size_t max_bit(std::size_t mask) {
    std::size_t m = 0;
    while (mask >> (m + 1)) ++m;
    return m;
}

}  // namespace

CliffordWordAlgebra::Element CliffordWordAlgebra::mul_word_generator(std::size_t subset,
                                                                     std::size_t gen) const {
    Element out{};
    for (auto& s : out) s = Scalar::zero(field_);
    if (subset == 0) {
        out[1u << gen] = Scalar::one(field_);
        return out;
    }
    const std::size_t m = max_bit(subset);
    if (m < gen) {
        out[subset | (1u << gen)] = Scalar::one(field_);
        return out;
    }
    const std::size_t rest = subset & ~(1u << m);
    if (m == gen) {
        out[rest] = gram_[m][m];
        return out;
    }
    // e_rest e_m e_gen = 2 b(m,gen) e_rest - (e_rest e_gen) e_m
    out[rest] = Scalar::from_int(2, field_) * gram_[m][gen];
    const Element rec = mul_word_generator(rest, gen);
    for (std::size_t t = 0; t < 8; ++t) {
        if (rec[t].is_zero()) continue;
        out[t | (1u << m)] -= rec[t];   // letters of t are all below m
    }
    return out;
}

CliffordWordAlgebra CliffordWordAlgebra::build(const ScalarMatrix& gram) {
    if (gram.rows() != 3 || gram.cols() != 3)
        throw CliffordError("oracle needs a 3x3 Gram matrix");
    CliffordWordAlgebra alg(gram.field());
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = 0; j < 3; ++j) {
            if (gram.at(i, j) != gram.at(j, i))
                throw CliffordError("oracle needs a symmetric Gram matrix");
            alg.gram_[i][j] = gram.at(i, j);
        }

    for (std::size_t s = 0; s < 8; ++s)
        for (std::size_t t = 0; t < 8; ++t) {
            Element acc{};
            for (auto& c : acc) c = Scalar::zero(alg.field_);
            acc[s] = Scalar::one(alg.field_);
            for (std::size_t gen = 0; gen < 3; ++gen) {
                if (!(t & (1u << gen))) continue;
                Element next{};
                for (auto& c : next) c = Scalar::zero(alg.field_);
                for (std::size_t w = 0; w < 8; ++w) {
                    if (acc[w].is_zero()) continue;
                    const Element step = alg.mul_word_generator(w, gen);
                    for (std::size_t u = 0; u < 8; ++u)
                        if (!step[u].is_zero()) next[u] += acc[w] * step[u];
                }
                acc = next;
            }
            alg.table_[s][t] = acc;
        }
    return alg;
}

CliffordWordAlgebra::Element CliffordWordAlgebra::multiply(const Element& x,
                                                           const Element& y) const {
    Element out{};
    for (auto& c : out) c = Scalar::zero(field_);
    for (std::size_t s = 0; s < 8; ++s) {
        if (x[s].is_zero()) continue;
        for (std::size_t t = 0; t < 8; ++t) {
            if (y[t].is_zero()) continue;
            const Scalar xy = x[s] * y[t];
            for (std::size_t u = 0; u < 8; ++u)
                if (!table_[s][t][u].is_zero()) out[u] += xy * table_[s][t][u];
        }
    }
    return out;
}

std::array<std::array<std::array<Scalar, 4>, 4>, 4> CliffordWordAlgebra::even_word_table()
    const {
    std::array<std::array<std::array<Scalar, 4>, 4>, 4> out;
    for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = 0; j < 4; ++j) {
            const Element& p = table_[kEvenMasks[i]][kEvenMasks[j]];
            for (std::size_t k = 0; k < 4; ++k) out[i][j][k] = p[kEvenMasks[k]];
            for (std::size_t odd : kOddMasks)
                if (!p[odd].is_zero())
                    throw CliffordError("even product leaked into odd words");
        }
    return out;
}

CliffordWordAlgebra::WedgeTables CliffordWordAlgebra::wedge_tables() const {
    WedgeTables out;
    auto zero_elem = [&] {
        Element e{};
        for (auto& c : e) c = Scalar::zero(field_);
        return e;
    };

    std::array<Element, 4> even_basis, odd_basis;
    for (auto& e : even_basis) e = zero_elem();
    for (auto& e : odd_basis) e = zero_elem();
    even_basis[0][0b000] = Scalar::one(field_);
    for (std::size_t s = 1; s < 4; ++s) {
        even_basis[s][kEvenMasks[s]] = Scalar::one(field_);
        const auto [i, j] = std::array<std::pair<int, int>, 4>{
            std::pair<int, int>{0, 0}, {0, 1}, {0, 2}, {1, 2}}[s];
        even_basis[s][0b000] = -gram_[i][j];
    }
    for (std::size_t k = 0; k < 3; ++k) odd_basis[k][1u << k] = Scalar::one(field_);
    odd_basis[3][0b111] = Scalar::one(field_);
    odd_basis[3][0b100] = -gram_[0][1];
    odd_basis[3][0b010] = gram_[0][2];
    odd_basis[3][0b001] = -gram_[1][2];

    auto to_even = [&](const Element& r) {
        std::array<Scalar, 4> c;
        for (std::size_t k = 1; k < 4; ++k) c[k] = r[kEvenMasks[k]];
        c[0] = r[0b000] + gram_[0][1] * c[1] + gram_[0][2] * c[2] + gram_[1][2] * c[3];
        for (std::size_t odd : kOddMasks)
            if (!r[odd].is_zero()) throw CliffordError("expected an even element");
        return c;
    };
    auto to_odd = [&](const Element& r) {
        std::array<Scalar, 4> c;
        c[3] = r[0b111];
        c[0] = r[0b001] + gram_[1][2] * c[3];
        c[1] = r[0b010] - gram_[0][2] * c[3];
        c[2] = r[0b100] + gram_[0][1] * c[3];
        for (std::size_t even : kEvenMasks)
            if (!r[even].is_zero()) throw CliffordError("expected an odd element");
        return c;
    };

    for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = 0; j < 4; ++j) {
            out.even[i][j] = to_even(multiply(even_basis[i], even_basis[j]));
            out.left[i][j] = to_odd(multiply(even_basis[i], odd_basis[j]));
            out.right[i][j] = to_odd(multiply(odd_basis[i], even_basis[j]));
            out.pairing[i][j] = to_even(multiply(odd_basis[i], odd_basis[j]));
        }
    return out;
}

CliffordWordAlgebra straightening_oracle(const TwistedQuadraticForm& q,
                                         std::span<const Scalar> point) {
    return CliffordWordAlgebra::build(q.matrix().eval(point));
}

}  // namespace conicliff
