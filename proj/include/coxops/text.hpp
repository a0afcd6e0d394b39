#pragma once

#include <cctype>
#include <string>
#include <string_view>
#include <vector>

#include "coxops/errors.hpp"
#include "coxops/polynomial.hpp"

namespace coxops {

// "3/2*x1^2*x2 + -x3 + 1": terms in canonical order joined by " + ",
// coefficient 1 omitted in front of a monomial, exponent 1 omitted.
template <bool L>
std::string render(const basic_polynomial<Rational, L>& p, const std::string& var = "x") {
    if (p.is_zero()) return "0";
    std::string out;
    for (const auto& t : p.terms()) {
        if (!out.empty()) out += " + ";
        std::string mono;
        for (int i = 0; i < p.nvars(); ++i) {
            int e = t.exp[i];
            if (e == 0) continue;
            if (!mono.empty()) mono += "*";
            mono += var + std::to_string(i + 1);
            if (e != 1) mono += "^" + std::to_string(e);
        }
        if (mono.empty()) {
            out += to_string(t.coef);
        } else if (t.coef == 1) {
            out += mono;
        } else if (t.coef == -1) {
            out += "-" + mono;
        } else {
            out += to_string(t.coef) + "*" + mono;
        }
    }
    return out;
}

namespace detail {

class poly_parser {
public:
    poly_parser(std::string_view s, int nvars, bool laurent) : s_(s), nvars_(nvars), laurent_(laurent) {}

    std::vector<Term<Rational>> terms() {
        std::vector<Term<Rational>> out;
        skip();
        if (eof()) fail("empty polynomial");
        bool first = true;
        while (!eof()) {
            int sign = 1;
            if (!first) {
                if (peek() == '+') {
                    ++pos_;
                } else if (peek() == '-') {
                    ++pos_;
                    sign = -1;
                } else {
                    fail("expected '+' or '-'");
                }
                skip();
            }
            while (!eof() && (peek() == '-' || peek() == '+')) {
                if (peek() == '-') sign = -sign;
                ++pos_;
                skip();
            }
            out.push_back(term(sign));
            first = false;
            skip();
        }
        return out;
    }

private:
    Term<Rational> term(int sign) {
        Rational coef = 1;
        Monomial exp;
        bool any = false;
        for (;;) {
            skip();
            if (eof()) fail("incomplete term");
            if (std::isdigit(static_cast<unsigned char>(peek()))) {
                coef *= number();
            } else if (std::isalpha(static_cast<unsigned char>(peek()))) {
                while (!eof() && std::isalpha(static_cast<unsigned char>(peek()))) ++pos_;
                std::string idx = digits();
                if (idx.empty()) fail("variable without index");
                int v = std::stoi(idx);
                if (v < 1 || v > nvars_) fail("variable index " + idx + " outside 1.." + std::to_string(nvars_));
                int e = 1;
                skip();
                if (!eof() && peek() == '^') {
                    ++pos_;
                    skip();
                    int s = 1;
                    if (!eof() && peek() == '-') {
                        s = -1;
                        ++pos_;
                    }
                    std::string d = digits();
                    if (d.empty()) fail("missing exponent");
                    e = s * std::stoi(d);
                }
                if (e < 0 && !laurent_) fail("negative exponent in a polynomial");
                exp.set(v - 1, exp[v - 1] + e);
            } else {
                fail(std::string("unexpected '") + peek() + "'");
            }
            any = true;
            skip();
            if (!eof() && peek() == '*') {
                ++pos_;
                continue;
            }
            break;
        }
        if (!any) fail("empty term");
        if (sign < 0) coef = -coef;
        return Term<Rational>{exp, coef};
    }

    Rational number() {
        std::string num = digits();
        skip();
        if (!eof() && peek() == '/') {
            ++pos_;
            skip();
            std::string den = digits();
            if (den.empty()) fail("missing denominator");
            try {
                return parse_rational(num + "/" + den);
            } catch (const error& e) {
                fail(e.what());
            }
        }
        return Rational(Integer(num));
    }

    std::string digits() {
        std::string d;
        while (!eof() && std::isdigit(static_cast<unsigned char>(peek()))) d += s_[pos_++];
        return d;
    }
    void skip() {
        while (!eof() && std::isspace(static_cast<unsigned char>(peek()))) ++pos_;
    }
    bool eof() const { return pos_ >= s_.size(); }
    char peek() const { return s_[pos_]; }
    [[noreturn]] void fail(const std::string& why) const {
        throw parse_error("polynomial text, position " + std::to_string(pos_) + ": " + why);
    }

    std::string_view s_;
    std::size_t pos_ = 0;
    int nvars_;
    bool laurent_;
};

} // namespace detail

// Inverse of render. Variable names are any letters followed by a 1-based
// index ("x2", "t1"); '-' is accepted as a term separator as well.
inline Polynomial parse_polynomial(std::string_view text, int nvars) {
    return Polynomial::from_terms(nvars, detail::poly_parser(text, nvars, false).terms());
}

inline LaurentPolynomial parse_laurent(std::string_view text, int nvars) {
    return LaurentPolynomial::from_terms(nvars, detail::poly_parser(text, nvars, true).terms());
}

} // namespace coxops
