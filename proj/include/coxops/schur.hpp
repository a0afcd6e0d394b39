#pragma once

#include <algorithm>
#include <compare>
#include <cstddef>
#include <map>
#include <string>
#include <vector>

#include "coxops/combinatorics.hpp"
#include "coxops/errors.hpp"
#include "coxops/kind.hpp"
#include "coxops/multi_index.hpp"
#include "coxops/poly_matrix.hpp"
#include "coxops/polynomial.hpp"

namespace coxops {

// Weakly decreasing sequence of m nonnegative parts.
class Partition {
public:
    Partition() = default;
    explicit Partition(std::vector<int> parts) : parts_(std::move(parts)) {
        for (std::size_t i = 0; i < parts_.size(); ++i) {
            if (parts_[i] < 0) throw invalid_argument("partition parts must be nonnegative");
            if (i > 0 && parts_[i] > parts_[i - 1]) throw invalid_argument("partition must be weakly decreasing");
        }
    }

    std::size_t size() const { return parts_.size(); }
    int operator[](std::size_t i) const { return parts_[i]; }
    const std::vector<int>& parts() const { return parts_; }

    int weight() const {
        int w = 0;
        for (int p : parts_) w += p;
        return w;
    }

    // Member of the box l - m >= lambda_1 >= ... >= lambda_m >= 0.
    bool fits(int l) const {
        return !parts_.empty() && static_cast<int>(parts_.size()) <= l && parts_[0] <= l - static_cast<int>(parts_.size());
    }

    std::string str() const {
        std::string s = "(";
        for (std::size_t i = 0; i < parts_.size(); ++i) s += (i ? "," : "") + std::to_string(parts_[i]);
        return s + ")";
    }

    friend bool operator==(const Partition&, const Partition&) = default;
    friend auto operator<=>(const Partition&, const Partition&) = default;

private:
    std::vector<int> parts_;
};

// The box of partitions, in descending lexicographic order.
inline std::vector<Partition> enumerate_lambda(int l, int m) {
    if (m < 1 || l < m) throw invalid_argument("need l >= m >= 1");
    std::vector<Partition> out;
    for (auto& p : partitions_in_box(m, l - m)) out.emplace_back(std::move(p));
    if (static_cast<std::int64_t>(out.size()) != binomial_small(l, m))
        throw error("partition box has the wrong size");
    return out;
}

// mu -> (l-m+1-mu_1, l-m+2-mu_2, ..., l-mu_m).
inline Partition lambda_of(const Selector& mu, int l) {
    const int m = static_cast<int>(mu.size());
    std::vector<int> parts(static_cast<std::size_t>(m));
    for (int i = 0; i < m; ++i) parts[static_cast<std::size_t>(i)] = l - m + i + 1 - mu[static_cast<std::size_t>(i)];
    return Partition(std::move(parts));
}

// Increasing selectors 1 <= mu_1 < ... < mu_m <= l, in increasing order. The
// bijection to the partition box is checked to reverse the order.
inline std::vector<Selector> enumerate_z(int l, int m) {
    if (m < 1 || l < m) throw invalid_argument("need l >= m >= 1");
    std::vector<Selector> out;
    for (auto& c : combinations(l, m)) out.emplace_back(std::move(c));
    for (std::size_t i = 0; i + 1 < out.size(); ++i)
        if (!(lambda_of(out[i], l) > lambda_of(out[i + 1], l)))
            throw error("selector/partition bijection does not reverse the order");
    return out;
}

namespace detail {

inline void check_shape(const Partition& lambda, int m) {
    if (m < 1 || static_cast<int>(lambda.size()) != m)
        throw invalid_argument("partition " + lambda.str() + " must have exactly m = " + std::to_string(m) + " parts");
}

// det(t_i^{e_j}) over m variables.
inline Polynomial alternant(const std::vector<int>& exps) {
    const int m = static_cast<int>(exps.size());
    PolyMatrix a(m, m, m);
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j)
            a(i, j) = Polynomial::monomial(m, Monomial::unit(i, exps[static_cast<std::size_t>(j)]));
    return determinant(a);
}

inline Monomial all_ones(int m, int power = 1) {
    Monomial r;
    for (int i = 0; i < m; ++i) r.set(i, power);
    return r;
}

// f(t_1^2, ..., t_m^2).
template <bool L>
basic_polynomial<Rational, L> square_variables(const basic_polynomial<Rational, L>& f) {
    std::vector<Term<Rational>> out;
    out.reserve(f.size());
    for (const auto& t : f.terms()) out.push_back(Term<Rational>{t.exp.scaled(2), t.coef});
    return basic_polynomial<Rational, L>::from_sorted_terms(f.nvars(), std::move(out));
}

} // namespace detail

// s^A by the bialternant det(t_i^{lambda_j+m-j}) / det(t_i^{m-j}).
inline Polynomial schur_a(const Partition& lambda, int m) {
    detail::check_shape(lambda, m);
    std::vector<int> top(static_cast<std::size_t>(m)), bottom(static_cast<std::size_t>(m));
    for (int j = 0; j < m; ++j) {
        top[static_cast<std::size_t>(j)] = lambda[static_cast<std::size_t>(j)] + m - 1 - j;
        bottom[static_cast<std::size_t>(j)] = m - 1 - j;
    }
    return exact_divide(detail::alternant(top), detail::alternant(bottom));
}

// s^A, s^B = t_1..t_m s^A(t^2) and s^D = (t_1..t_m)^{-1} s^A(t^2), as Laurent
// polynomials in t_1..t_m.
inline LaurentPolynomial schur(Kind kind, const Partition& lambda, int m) {
    Polynomial a = schur_a(lambda, m);
    if (kind == Kind::A) return to_laurent(a);
    LaurentPolynomial sq = to_laurent(detail::square_variables(a));
    LaurentPolynomial t = LaurentPolynomial::monomial(m, detail::all_ones(m, kind == Kind::B ? 1 : -1));
    return sq * t;
}

// The raw alternant ratios for B and D (and the bialternant for A), without
// going through s^A. Used to cross-check the factored forms.
inline LaurentPolynomial schur_ratio(Kind kind, const Partition& lambda, int m) {
    detail::check_shape(lambda, m);
    if (kind == Kind::A) return to_laurent(schur_a(lambda, m));
    std::vector<int> top(static_cast<std::size_t>(m)), bottom(static_cast<std::size_t>(m));
    for (int j = 0; j < m; ++j) {
        int base = 2 * (lambda[static_cast<std::size_t>(j)] + m - 1 - j);
        // D's exponent base - 1 can be -1; shift every row by t_i so that the
        // alternant is a polynomial, then divide the shift back out.
        top[static_cast<std::size_t>(j)] = kind == Kind::B ? base + 1 : base;
        bottom[static_cast<std::size_t>(j)] = 2 * (m - 1 - j);
    }
    Polynomial q = exact_divide(detail::alternant(top), detail::alternant(bottom));
    if (kind == Kind::B) return to_laurent(q);
    return divide_by_monomial(to_laurent(q), detail::all_ones(m));
}

// Combinatorial Schur polynomial: sum over semistandard Young tableaux of
// shape lambda with entries in 1..m.
inline Polynomial schur_ssyt_oracle(const Partition& lambda, int m) {
    detail::check_shape(lambda, m);
    std::vector<int> shape;
    for (int p : lambda.parts())
        if (p > 0) shape.push_back(p);
    std::vector<std::vector<int>> tab;
    for (int len : shape) tab.emplace_back(static_cast<std::size_t>(len), 0);
    std::map<Monomial, Rational, std::greater<>> acc;
    auto rec = [&](auto&& self, std::size_t r, std::size_t c) -> void {
        if (r == shape.size()) {
            Monomial mono;
            for (const auto& row : tab)
                for (int v : row) mono.set(v - 1, mono[v - 1] + 1);
            acc[mono] += 1;
            return;
        }
        if (c == tab[r].size()) {
            self(self, r + 1, 0);
            return;
        }
        int lo = 1;
        if (c > 0) lo = std::max(lo, tab[r][c - 1]);
        if (r > 0) lo = std::max(lo, tab[r - 1][c] + 1);
        for (int v = lo; v <= m; ++v) {
            tab[r][c] = v;
            self(self, r, c + 1);
        }
    };
    rec(rec, 0, 0);
    std::vector<Term<Rational>> terms;
    for (auto& [mono, coef] : acc) terms.push_back(Term<Rational>{mono, coef});
    return Polynomial::from_sorted_terms(m, std::move(terms));
}

// The substitution vector x_alpha: x_i repeated alpha_i times (x_i^2 when
// squared), i = 1..l.
inline std::vector<Polynomial> x_alpha(const MultiIndex& alpha, int l, int m, bool squared = false) {
    if (order(alpha) != m) throw invalid_argument("|alpha| must equal m");
    if (alpha.support_end() >= l) throw dimension_mismatch("multi-index uses more than l entries");
    std::vector<Polynomial> out;
    for (int i = 0; i < l; ++i)
        for (int k = 0; k < alpha[i]; ++k) out.push_back(Polynomial::monomial(l, Monomial::unit(i, squared ? 2 : 1)));
    return out;
}

// f(values_1, ..., values_m) for a Laurent f in m variables. Negative powers
// need the corresponding value to be a single term.
inline LaurentPolynomial substitute(const LaurentPolynomial& f, const std::vector<Polynomial>& values) {
    if (static_cast<int>(values.size()) != f.nvars())
        throw dimension_mismatch("substitute: need one value per variable");
    if (values.empty()) return f;
    const int n = values.front().nvars();
    for (const auto& v : values)
        if (v.nvars() != n) throw dimension_mismatch("substitute: values live in different rings");
    std::vector<std::map<int, LaurentPolynomial>> cache(values.size());
    auto power = [&](std::size_t i, int e) -> const LaurentPolynomial& {
        auto it = cache[i].find(e);
        if (it != cache[i].end()) return it->second;
        LaurentPolynomial base = to_laurent(values[i]);
        if (e < 0) {
            if (values[i].size() != 1) throw not_polynomial("negative power of a non-monomial value");
            const auto& t = values[i].terms().front();
            base = LaurentPolynomial::monomial(n, Monomial{} - t.exp, Rational(1) / t.coef);
        }
        LaurentPolynomial r = base.pow(static_cast<unsigned>(e < 0 ? -e : e));
        return cache[i].emplace(e, std::move(r)).first->second;
    };
    std::vector<Term<Rational>> terms;
    for (const auto& t : f.terms()) {
        LaurentPolynomial prod = LaurentPolynomial::constant(n, t.coef);
        for (int i = 0; i < f.nvars(); ++i)
            if (t.exp[i] != 0) prod *= power(static_cast<std::size_t>(i), t.exp[i]);
        terms.insert(terms.end(), prod.terms().begin(), prod.terms().end());
    }
    return LaurentPolynomial::from_terms(n, std::move(terms));
}

inline Polynomial substitute_polynomial(const LaurentPolynomial& f, const std::vector<Polynomial>& values) {
    return to_polynomial(substitute(f, values));
}

// (s_lambda(x_mu)) with rows lambda descending and columns mu increasing.
inline basic_matrix<LaurentPolynomial> schur_matrix(Kind kind, int l, int m) {
    auto lambdas = enumerate_lambda(l, m);
    auto zs = enumerate_z(l, m);
    const int n = static_cast<int>(lambdas.size());
    basic_matrix<LaurentPolynomial> out(n, n, l);
    for (int r = 0; r < n; ++r) {
        LaurentPolynomial s = schur(kind, lambdas[static_cast<std::size_t>(r)], m);
        for (int c = 0; c < n; ++c) {
            std::vector<Polynomial> vals;
            for (int idx : zs[static_cast<std::size_t>(c)].indices())
                vals.push_back(Polynomial::variable(l, idx - 1));
            out(r, c) = substitute(s, vals);
        }
    }
    return out;
}

struct schur_identity_report {
    bool holds = false;
    int sign = 0;        // +1 or -1 when it holds
    Polynomial lhs;      // determinant (column-cleared for D)
    Polynomial rhs;      // the identity's right side (cleared for D)
};

namespace detail {

inline Polynomial vandermonde(int l, bool squared) {
    Polynomial v = Polynomial::constant(l, Rational(1));
    for (int i = 0; i < l; ++i)
        for (int j = i + 1; j < l; ++j) {
            Polynomial f = Polynomial::monomial(l, Monomial::unit(i, squared ? 2 : 1)) -
                           Polynomial::monomial(l, Monomial::unit(j, squared ? 2 : 1));
            v *= f;
        }
    return v;
}

} // namespace detail

// det(s_lambda(x_mu)) against V^{C(l-2,m-1)} (A),
// (x_1..x_l)^{C(l-1,m-1)} V(x^2)^{C(l-2,m-1)} (B) and, after multiplying
// column mu by x_mu1..x_mum, V(x^2)^{C(l-2,m-1)} (D). Equality is checked up
// to a global sign, which is reported.
inline schur_identity_report verify_schur_det_identity(Kind kind, int l, int m) {
    auto sm = schur_matrix(kind, l, m);
    auto zs = enumerate_z(l, m);
    const int n = sm.rows();
    PolyMatrix pm(n, n, l);
    for (int c = 0; c < n; ++c) {
        Monomial shift;
        if (kind == Kind::D)
            for (int idx : zs[static_cast<std::size_t>(c)].indices()) shift.set(idx - 1, 1);
        for (int r = 0; r < n; ++r) {
            LaurentPolynomial e = sm(r, c);
            if (kind == Kind::D) e = e * LaurentPolynomial::monomial(l, shift);
            pm(r, c) = to_polynomial(e);
        }
    }
    const auto e_v = static_cast<unsigned>(binomial_small(l - 2, m - 1));
    const auto e_x = static_cast<unsigned>(binomial_small(l - 1, m - 1));
    schur_identity_report rep;
    rep.lhs = determinant(pm);
    rep.rhs = detail::vandermonde(l, kind != Kind::A).pow(e_v);
    if (kind == Kind::B) rep.rhs *= Polynomial::monomial(l, detail::all_ones(l, static_cast<int>(e_x)));
    if (rep.lhs == rep.rhs) {
        rep.holds = true;
        rep.sign = 1;
    } else if (rep.lhs == -rep.rhs) {
        rep.holds = true;
        rep.sign = -1;
    }
    return rep;
}

} // namespace coxops
