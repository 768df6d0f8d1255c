#include <cctype>

#include "conicliff/poly.hpp"

namespace conicliff {

namespace {

struct Cursor {
    const std::string& s;
    std::size_t i = 0;

    void skip_ws() {
        while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
    }
    bool at_end() {
        skip_ws();
        return i >= s.size();
    }
    char peek() {
        skip_ws();
        return i < s.size() ? s[i] : '\0';
    }
    bool consume(char c) {
        skip_ws();
        if (i < s.size() && s[i] == c) {
            ++i;
            return true;
        }
        return false;
    }
    std::string digits() {
        skip_ws();
        std::size_t start = i;
        while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
        if (i == start) throw PolyError("expected digits at position " + std::to_string(start) +
                                        " in \"" + s + "\"");
        return s.substr(start, i - start);
    }
};

struct Term {
    Scalar coeff;
    Monomial mono;
    std::string text;   // for error messages
};

Term parse_term(Cursor& c, Field field, std::uint32_t nvars) {
    Term t{Scalar::one(field), Monomial(nvars, 0), ""};
    const std::size_t start = c.i;
    bool any = false;
    for (;;) {
        char ch = c.peek();
        if (std::isdigit(static_cast<unsigned char>(ch))) {
            t.coeff = t.coeff * Scalar::from_string(c.digits(), field);
            any = true;
        } else if (ch == 'x') {
            c.consume('x');
            unsigned long idx = std::stoul(c.digits());
            if (idx >= nvars)
                throw PolyError("variable x" + std::to_string(idx) + " out of range (nvars=" +
                                std::to_string(nvars) + ")");
            std::uint32_t e = 1;
            if (c.consume('^')) e = static_cast<std::uint32_t>(std::stoul(c.digits()));
            t.mono[idx] += e;
            any = true;
        } else {
            break;
        }
        if (!c.consume('*')) break;
    }
    if (!any) throw PolyError("expected a term at position " + std::to_string(start));
    t.text = c.s.substr(start, c.i - start);
    return t;
}

}  // namespace

HomogeneousPoly parse_poly(const std::string& text, Field field, std::uint32_t nvars) {
    Cursor c{text};
    HomogeneousPoly p = HomogeneousPoly::zero(field, nvars);
    if (c.at_end()) throw PolyError("empty polynomial text");

    std::vector<Term> terms;
    bool negate = c.consume('-');
    for (;;) {
        Term t = parse_term(c, field, nvars);
        if (negate) t.coeff = -t.coeff;
        terms.push_back(std::move(t));
        if (c.at_end()) break;
        if (c.consume('+'))
            negate = false;
        else if (c.consume('-'))
            negate = true;
        else
            throw PolyError("unexpected character '" + std::string(1, c.peek()) +
                            "' at position " + std::to_string(c.i));
    }

    // Homogeneity check with the offending monomial named. A lone integer
    // term of value zero ("0") is the zero polynomial and exempt.
    int degree = -1;
    std::string degree_witness;
    for (const auto& t : terms) {
        if (t.coeff.is_zero()) continue;
        const int d = static_cast<int>(monomial_degree(t.mono));
        if (degree == -1) {
            degree = d;
            degree_witness = t.text;
        } else if (d != degree) {
            throw PolyError("non-homogeneous input: monomial \"" + t.text + "\" has degree " +
                            std::to_string(d) + " but \"" + degree_witness + "\" has degree " +
                            std::to_string(degree));
        }
    }
    for (const auto& t : terms)
        if (!t.coeff.is_zero()) p += HomogeneousPoly::monomial(t.coeff, t.mono);
    return p;
}

}  // namespace conicliff
