#pragma once

#include <algorithm>
#include <cstddef>
#include <functional>
#include <map>
#include <span>
#include <string>
#include <type_traits>
#include <utility>
#include <vector>

#include "coxops/errors.hpp"
#include "coxops/monomial.hpp"
#include "coxops/rational.hpp"

namespace coxops {

template <class Coeff>
struct Term {
    Monomial exp;
    Coeff coef;

    friend bool operator==(const Term&, const Term&) = default;
};

namespace detail {

// Terms are kept sorted by descending lex order on exponent vectors.
struct term_order {
    template <class C>
    bool operator()(const Term<C>& a, const Term<C>& b) const { return a.exp > b.exp; }
};

// Merge two sorted term lists, combining equal monomials and dropping zeros.
template <class C>
std::vector<Term<C>> merge_add(std::vector<Term<C>>&& a, std::vector<Term<C>>&& b) {
    if (a.empty()) return std::move(b);
    if (b.empty()) return std::move(a);
    std::vector<Term<C>> out;
    out.reserve(a.size() + b.size());
    std::size_t i = 0, j = 0;
    while (i < a.size() && j < b.size()) {
        if (a[i].exp > b[j].exp) {
            out.push_back(std::move(a[i++]));
        } else if (b[j].exp > a[i].exp) {
            out.push_back(std::move(b[j++]));
        } else {
            a[i].coef += b[j].coef;
            if (!is_zero(a[i].coef)) out.push_back(std::move(a[i]));
            ++i;
            ++j;
        }
    }
    for (; i < a.size(); ++i) out.push_back(std::move(a[i]));
    for (; j < b.size(); ++j) out.push_back(std::move(b[j]));
    return out;
}

// Pairwise tournament merge of many sorted lists.
template <class C>
std::vector<Term<C>> merge_all(std::vector<std::vector<Term<C>>>&& lists) {
    if (lists.empty()) return {};
    while (lists.size() > 1) {
        std::vector<std::vector<Term<C>>> next;
        next.reserve((lists.size() + 1) / 2);
        for (std::size_t k = 0; k + 1 < lists.size(); k += 2)
            next.push_back(merge_add(std::move(lists[k]), std::move(lists[k + 1])));
        if (lists.size() % 2 == 1) next.push_back(std::move(lists.back()));
        lists = std::move(next);
    }
    return std::move(lists.front());
}

// t * b for a single term t; adding a fixed exponent vector preserves the order.
template <class C>
std::vector<Term<C>> shift_scale(const Term<C>& t, const std::vector<Term<C>>& b) {
    std::vector<Term<C>> out;
    out.reserve(b.size());
    for (const auto& bt : b) out.push_back(Term<C>{t.exp + bt.exp, C(t.coef * bt.coef)});
    return out;
}

} // namespace detail

// Sparse multivariate polynomial in x_1..x_n with coefficients in Coeff.
// The Laurent flavour admits negative exponents; the plain flavour rejects
// them at construction, which is the only difference between the two.
template <class Coeff, bool Laurent>
class basic_polynomial {
public:
    using coeff_type = Coeff;
    using term_type = Term<Coeff>;
    static constexpr bool is_laurent = Laurent;

    basic_polynomial() = default;
    explicit basic_polynomial(int nvars) : nvars_(check_nvars(nvars)) {}

    static basic_polynomial constant(int nvars, const Coeff& c) {
        return monomial(nvars, Monomial{}, c);
    }

    // x_{index+1}; index is zero-based.
    static basic_polynomial variable(int nvars, int index) {
        if (index < 0 || index >= nvars) throw invalid_argument("variable index out of range");
        return monomial(nvars, Monomial::unit(index), Coeff(1));
    }

    static basic_polynomial monomial(int nvars, const Monomial& m, const Coeff& c = Coeff(1)) {
        basic_polynomial p(nvars);
        p.check_monomial(m);
        if (!coxops::is_zero(c)) p.terms_.push_back(term_type{m, c});
        return p;
    }

    // Arbitrary term list: sorted, combined and pruned here.
    static basic_polynomial from_terms(int nvars, std::vector<term_type> terms) {
        basic_polynomial p(nvars);
        for (const auto& t : terms) p.check_monomial(t.exp);
        std::sort(terms.begin(), terms.end(), detail::term_order{});
        std::vector<term_type> out;
        out.reserve(terms.size());
        for (auto& t : terms) {
            if (!out.empty() && out.back().exp == t.exp) {
                out.back().coef += t.coef;
            } else {
                if (!out.empty() && coxops::is_zero(out.back().coef)) out.pop_back();
                out.push_back(std::move(t));
            }
        }
        if (!out.empty() && coxops::is_zero(out.back().coef)) out.pop_back();
        p.terms_ = std::move(out);
        return p;
    }

    // Caller guarantees the list is already sorted, combined and zero-free.
    static basic_polynomial from_sorted_terms(int nvars, std::vector<term_type> terms) {
        basic_polynomial p(nvars);
        p.terms_ = std::move(terms);
        return p;
    }

    int nvars() const { return nvars_; }
    const std::vector<term_type>& terms() const { return terms_; }
    std::size_t size() const { return terms_.size(); }
    bool is_zero() const { return terms_.empty(); }

    bool is_constant() const {
        return terms_.empty() || (terms_.size() == 1 && terms_.front().exp.is_one());
    }

    // Coefficient of the constant monomial.
    Coeff constant_value() const { return coefficient(Monomial{}); }

    Coeff coefficient(const Monomial& m) const {
        auto it = std::lower_bound(terms_.begin(), terms_.end(), term_type{m, Coeff(0)},
                                   detail::term_order{});
        if (it != terms_.end() && it->exp == m) return it->coef;
        return Coeff(0);
    }

    const term_type& leading_term() const {
        if (terms_.empty()) throw invalid_argument("zero polynomial has no leading term");
        return terms_.front();
    }

    // Total degree (signed for Laurent). Zero has none.
    int degree() const {
        if (terms_.empty()) throw invalid_argument("zero polynomial has no degree");
        int d = terms_.front().exp.total_degree();
        for (const auto& t : terms_) d = std::max(d, t.exp.total_degree());
        return d;
    }

    bool is_homogeneous() const {
        if (terms_.empty()) return true;
        int d = terms_.front().exp.total_degree();
        return std::all_of(terms_.begin(), terms_.end(),
                           [d](const term_type& t) { return t.exp.total_degree() == d; });
    }

    // No negative exponents anywhere.
    bool is_polynomial() const {
        return std::all_of(terms_.begin(), terms_.end(),
                           [](const term_type& t) { return t.exp.is_nonnegative(); });
    }

    // Largest exponent of x_{var+1} over all terms.
    int degree_in(int var) const {
        int d = 0;
        bool first = true;
        for (const auto& t : terms_) {
            if (first || t.exp[var] > d) d = t.exp[var];
            first = false;
        }
        return d;
    }

    basic_polynomial operator-() const {
        basic_polynomial r = *this;
        for (auto& t : r.terms_) t.coef = -t.coef;
        return r;
    }

    basic_polynomial& operator+=(const basic_polynomial& o) {
        check_same(o);
        auto copy = o.terms_;
        terms_ = detail::merge_add(std::move(terms_), std::move(copy));
        return *this;
    }

    basic_polynomial& operator-=(const basic_polynomial& o) { return *this += -o; }

    basic_polynomial& operator*=(const Coeff& c) {
        if (coxops::is_zero(c)) {
            terms_.clear();
        } else {
            for (auto& t : terms_) t.coef *= c;
        }
        return *this;
    }

    friend basic_polynomial operator+(basic_polynomial a, const basic_polynomial& b) { return a += b; }
    friend basic_polynomial operator-(basic_polynomial a, const basic_polynomial& b) { return a -= b; }
    friend basic_polynomial operator*(basic_polynomial a, const Coeff& c) { return a *= c; }
    friend basic_polynomial operator*(const Coeff& c, basic_polynomial a) { return a *= c; }

    friend basic_polynomial operator*(const basic_polynomial& a, const basic_polynomial& b) {
        a.check_same(b);
        const basic_polynomial& small = a.size() <= b.size() ? a : b;
        const basic_polynomial& big = a.size() <= b.size() ? b : a;
        if (small.is_zero()) return basic_polynomial(a.nvars_);
        std::vector<std::vector<term_type>> lists;
        lists.reserve(small.size());
        for (const auto& t : small.terms_) lists.push_back(detail::shift_scale(t, big.terms_));
        return from_sorted_terms(a.nvars_, detail::merge_all(std::move(lists)));
    }

    basic_polynomial& operator*=(const basic_polynomial& o) { return *this = *this * o; }

    basic_polynomial pow(unsigned e) const {
        basic_polynomial r = constant(nvars_, Coeff(1));
        for (unsigned i = 0; i < e; ++i) r *= *this;
        return r;
    }

    friend bool operator==(const basic_polynomial& a, const basic_polynomial& b) {
        return a.nvars_ == b.nvars_ && a.terms_ == b.terms_;
    }

private:
    static int check_nvars(int n) {
        if (n < 0 || n > kMaxVars)
            throw invalid_argument("variable count must be in [0, " + std::to_string(kMaxVars) + "]");
        return n;
    }

    void check_monomial(const Monomial& m) const {
        if (m.support_end() >= nvars_)
            throw dimension_mismatch("monomial uses more than " + std::to_string(nvars_) + " variables");
        if constexpr (!Laurent) {
            if (!m.is_nonnegative()) throw not_polynomial("negative exponent in a polynomial");
        }
    }

    void check_same(const basic_polynomial& o) const {
        if (nvars_ != o.nvars_)
            throw dimension_mismatch("ambient dimension mismatch: " + std::to_string(nvars_) + " vs " +
                                     std::to_string(o.nvars_));
    }

    int nvars_ = 0;
    std::vector<term_type> terms_;
};

using Polynomial = basic_polynomial<Rational, false>;
using LaurentPolynomial = basic_polynomial<Rational, true>;
using IntPolynomial = basic_polynomial<Integer, false>;

template <class C>
basic_polynomial<C, true> to_laurent(const basic_polynomial<C, false>& p) {
    return basic_polynomial<C, true>::from_sorted_terms(p.nvars(), p.terms());
}

// Coerce a Laurent value into the polynomial ring; NotPolynomial otherwise.
template <class C>
basic_polynomial<C, false> to_polynomial(const basic_polynomial<C, true>& p) {
    if (!p.is_polynomial()) throw not_polynomial("Laurent polynomial has negative exponents");
    return basic_polynomial<C, false>::from_sorted_terms(p.nvars(), p.terms());
}

template <class C, bool L>
basic_polynomial<C, L> add(const basic_polynomial<C, L>& a, const basic_polynomial<C, L>& b) {
    return a + b;
}

template <class C, bool L>
basic_polynomial<C, L> mul(const basic_polynomial<C, L>& a, const basic_polynomial<C, L>& b) {
    return a * b;
}


// One summand of sum_of_products: sign * small * big.
template <class P>
struct product_term {
    const P* small;
    const P* big;
    int sign = 1;
};

// sum_k sign_k * small_k * big_k computed by a single heap merge over the
// shifted copies of each big_k, so no intermediate products are materialized.
// Efficient when the small factors have few terms (matrix entries) and the big
// ones are large (minors).
template <class C, bool L>
basic_polynomial<C, L> sum_of_products(const std::vector<product_term<basic_polynomial<C, L>>>& parts,
                                       int nvars) {
    using Tm = Term<C>;
    struct cursor {
        Monomial key;
        const Tm* factor;
        const Tm* pos;
        const Tm* end;
        int sign;
    };
    auto less = [](const cursor& a, const cursor& b) { return a.key < b.key; };
    std::vector<cursor> heap;
    std::size_t estimate = 0;
    for (const auto& part : parts) {
        if (part.small->nvars() != nvars || part.big->nvars() != nvars)
            throw dimension_mismatch("ambient dimension mismatch in sum_of_products");
        const auto& big = part.big->terms();
        if (big.empty()) continue;
        for (const auto& t : part.small->terms()) {
            heap.push_back(cursor{t.exp + big.front().exp, &t, big.data(), big.data() + big.size(), part.sign});
            estimate = std::max(estimate, big.size());
        }
    }
    std::make_heap(heap.begin(), heap.end(), less);
    std::vector<Tm> out;
    out.reserve(estimate);
    while (!heap.empty()) {
        std::pop_heap(heap.begin(), heap.end(), less);
        cursor& c = heap.back();
        if (!out.empty() && out.back().exp == c.key) {
            if (c.sign > 0)
                out.back().coef += c.factor->coef * c.pos->coef;
            else
                out.back().coef -= c.factor->coef * c.pos->coef;
        } else {
            if (!out.empty() && coxops::is_zero(out.back().coef)) out.pop_back();
            C v = c.factor->coef * c.pos->coef;
            if (c.sign < 0) v = -v;
            out.push_back(Tm{c.key, std::move(v)});
        }
        ++c.pos;
        if (c.pos != c.end) {
            c.key = c.factor->exp + c.pos->exp;
            std::push_heap(heap.begin(), heap.end(), less);
        } else {
            heap.pop_back();
        }
    }
    if (!out.empty() && coxops::is_zero(out.back().coef)) out.pop_back();
    return basic_polynomial<C, L>::from_sorted_terms(nvars, std::move(out));
}

namespace detail {

// Quotient and remainder of leading-term division under descending lex.
// When b divides a exactly the leading term of b divides the leading term of
// every intermediate remainder (it is a multiple of b), so a stall with a
// nonzero remainder proves that b does not divide a.
template <class C, bool L>
bool try_exact_divide(const basic_polynomial<C, L>& a, const basic_polynomial<C, L>& b,
                      basic_polynomial<C, L>* quotient) {
    // Lex is not a well-order once exponents may go negative.
    static_assert(!L, "leading-term division is defined on the polynomial ring only");
    if (a.nvars() != b.nvars()) throw dimension_mismatch("ambient dimension mismatch in division");
    if (b.is_zero()) throw invalid_argument("division by the zero polynomial");
    if (a.is_zero()) {
        if (quotient) *quotient = basic_polynomial<C, L>(a.nvars());
        return true;
    }
    const auto& lead = b.leading_term();
    // Constant divisor: scale.
    if (b.size() == 1 && lead.exp.is_one()) {
        if constexpr (std::is_same_v<C, Integer>) {
            for (const auto& t : a.terms())
                if (!mpz_divisible_p(t.coef.get_mpz_t(), lead.coef.get_mpz_t())) return false;
            if (quotient) {
                std::vector<Term<C>> q = a.terms();
                for (auto& t : q) mpz_divexact(t.coef.get_mpz_t(), t.coef.get_mpz_t(), lead.coef.get_mpz_t());
                *quotient = basic_polynomial<C, L>::from_sorted_terms(a.nvars(), std::move(q));
            }
            return true;
        } else {
            if (quotient) *quotient = a * C(1 / lead.coef);
            return true;
        }
    }
    // Monomial divisor: exponent shift.
    if (b.size() == 1) {
        std::vector<Term<C>> q;
        q.reserve(a.size());
        for (const auto& t : a.terms()) {
            if (!lead.exp.divides(t.exp)) return false;
            C c;
            if constexpr (std::is_same_v<C, Integer>) {
                if (!mpz_divisible_p(t.coef.get_mpz_t(), lead.coef.get_mpz_t())) return false;
                c = t.coef;
                mpz_divexact(c.get_mpz_t(), c.get_mpz_t(), lead.coef.get_mpz_t());
            } else {
                c = t.coef / lead.coef;
            }
            q.push_back(Term<C>{t.exp - lead.exp, std::move(c)});
        }
        if (quotient) *quotient = basic_polynomial<C, L>::from_sorted_terms(a.nvars(), std::move(q));
        return true;
    }
    std::map<Monomial, C, std::greater<>> rem;
    for (const auto& t : a.terms()) rem.emplace_hint(rem.end(), t.exp, t.coef);
    std::vector<Term<C>> q;
    while (!rem.empty()) {
        auto top = rem.begin();
        if (!lead.exp.divides(top->first)) return false;
        Monomial qe = top->first - lead.exp;
        C qc;
        if constexpr (std::is_same_v<C, Integer>) {
            if (!mpz_divisible_p(top->second.get_mpz_t(), lead.coef.get_mpz_t())) return false;
            qc = top->second;
            mpz_divexact(qc.get_mpz_t(), qc.get_mpz_t(), lead.coef.get_mpz_t());
        } else {
            qc = top->second / lead.coef;
        }
        rem.erase(top);
        for (std::size_t k = 1; k < b.terms().size(); ++k) {
            const auto& bt = b.terms()[k];
            Monomial e = qe + bt.exp;
            C prod = qc * bt.coef;
            auto [it, inserted] = rem.try_emplace(e);
            if (inserted) {
                it->second = -prod;
            } else {
                it->second -= prod;
                if (is_zero(it->second)) rem.erase(it);
            }
        }
        q.push_back(Term<C>{qe, std::move(qc)});
    }
    if (quotient) *quotient = basic_polynomial<C, L>::from_sorted_terms(a.nvars(), std::move(q));
    return true;
}

} // namespace detail

// q with q*b = a, or NotDivisible.
template <class C>
basic_polynomial<C, false> exact_divide(const basic_polynomial<C, false>& a,
                                        const basic_polynomial<C, false>& b) {
    basic_polynomial<C, false> q;
    if (!detail::try_exact_divide(a, b, &q)) throw not_divisible("polynomial division is not exact");
    return q;
}

template <class C>
bool is_divisible_by(const basic_polynomial<C, false>& a, const basic_polynomial<C, false>& b) {
    return detail::try_exact_divide(a, b, static_cast<basic_polynomial<C, false>*>(nullptr));
}

// Divide by a nonzero monomial in the Laurent ring (always exact).
template <class C>
basic_polynomial<C, true> divide_by_monomial(const basic_polynomial<C, true>& a, const Monomial& m,
                                             const C& c = C(1)) {
    std::vector<Term<C>> q;
    q.reserve(a.size());
    for (const auto& t : a.terms()) q.push_back(Term<C>{t.exp - m, C(t.coef / c)});
    return basic_polynomial<C, true>::from_sorted_terms(a.nvars(), std::move(q));
}

// Change of coefficient ring, e.g. rational -> integer once denominators are cleared.
template <class To, class From, bool L, class F>
basic_polynomial<To, L> map_coefficients(const basic_polynomial<From, L>& p, F&& f) {
    std::vector<Term<To>> out;
    out.reserve(p.size());
    for (const auto& t : p.terms()) {
        To c = f(t.coef);
        if (!is_zero(c)) out.push_back(Term<To>{t.exp, std::move(c)});
    }
    return basic_polynomial<To, L>::from_sorted_terms(p.nvars(), std::move(out));
}

// Lowest common denominator of all coefficients.
template <bool L>
Integer common_denominator(const basic_polynomial<Rational, L>& p) {
    Integer d = 1;
    for (const auto& t : p.terms()) mpz_lcm(d.get_mpz_t(), d.get_mpz_t(), t.coef.get_den_mpz_t());
    return d;
}

// Product of a sequence of factors, multiplying the accumulated value by one
// small factor at a time.
template <class P>
P product(const std::vector<P>& factors, int nvars) {
    P r = P::constant(nvars, typename P::coeff_type(1));
    for (const auto& f : factors) r *= f;
    return r;
}

} // namespace coxops
