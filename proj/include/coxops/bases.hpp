#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "coxops/arrangement.hpp"
#include "coxops/diffop.hpp"
#include "coxops/errors.hpp"
#include "coxops/kind.hpp"
#include "coxops/multi_index.hpp"
#include "coxops/parallel.hpp"
#include "coxops/schur.hpp"

namespace coxops {

namespace detail {

inline void check_k(int k, int l) {
    if (l < 1 || l > kMaxVars) throw invalid_argument("l out of range");
    if (k < 1 || k > l) throw invalid_argument("k must lie in [1, l]");
}

// f with variables i and j exchanged.
template <bool L>
basic_polynomial<Rational, L> swap_variables(const basic_polynomial<Rational, L>& f, int i, int j) {
    std::vector<Term<Rational>> out;
    out.reserve(f.size());
    for (const auto& t : f.terms()) {
        Monomial e = t.exp;
        e.set(i, t.exp[j]);
        e.set(j, t.exp[i]);
        out.push_back(Term<Rational>{e, t.coef});
    }
    return basic_polynomial<Rational, L>::from_terms(f.nvars(), std::move(out));
}

inline bool is_symmetric(const LaurentPolynomial& f) {
    for (int i = 0; i + 1 < f.nvars(); ++i)
        if (swap_variables(f, i, i + 1) != f) return false;
    return true;
}

// sum_alpha prefactor * f(x_alpha) / alpha! d^alpha.
inline DiffOperator theta_with_prefactor(const LaurentPolynomial& f, int l, int m, const Monomial& prefactor) {
    if (f.nvars() != m) throw dimension_mismatch("symmetric function must have m variables");
    DiffOperator op(l, m);
    for (const auto& alpha : multi_indices(l, m)) {
        LaurentPolynomial v = substitute(f, x_alpha(alpha, l, m));
        if (v.is_zero()) continue;
        v *= Rational(Integer(1), alpha_factorial(alpha));
        v = v * LaurentPolynomial::monomial(l, prefactor);
        op.add_term(alpha, to_polynomial(v));
    }
    return op;
}

inline Polynomial h_a(int k, int l) {
    Polynomial h = Polynomial::constant(l, Rational(1));
    auto xk = Polynomial::variable(l, k - 1);
    for (int j = 1; j <= l; ++j)
        if (j != k) h *= xk - Polynomial::variable(l, j - 1);
    return h;
}

// prod_{j != k} (x_k^2 - x_j^2)
inline Polynomial h_d(int k, int l) {
    Polynomial h = Polynomial::constant(l, Rational(1));
    auto xk2 = Polynomial::monomial(l, Monomial::unit(k - 1, 2));
    for (int j = 1; j <= l; ++j)
        if (j != k) h *= xk2 - Polynomial::monomial(l, Monomial::unit(j - 1, 2));
    return h;
}

inline Polynomial h_b(int k, int l) { return Polynomial::variable(l, k - 1) * h_d(k, l); }

inline Monomial product_of_variables(int l, int power) {
    Monomial e;
    for (int i = 0; i < l; ++i) e.set(i, power);
    return e;
}

} // namespace detail

// h_k (1/m!) d_k^m with h^A_k = prod_{j != k}(x_k - x_j) and
// h^B_k = x_k prod_{j != k}(x_k^2 - x_j^2).
inline DiffOperator eta(Kind kind, int k, int l, int m) {
    detail::check_k(k, l);
    if (kind == Kind::D) throw invalid_argument("eta: use eta_d for type D");
    Polynomial h = kind == Kind::A ? detail::h_a(k, l) : detail::h_b(k, l);
    DiffOperator op(l, m);
    op.add_term(Monomial::unit(k - 1, m), h * Rational(Integer(1), factorial(static_cast<unsigned>(m))));
    return op;
}

// theta_f = sum_{|alpha| = m} f(x_alpha) (1/alpha!) d^alpha for a symmetric f
// in m variables.
inline DiffOperator theta_from_symmetric(const LaurentPolynomial& f, int l, int m) {
    if (m < 1 || l < 1 || l > kMaxVars) throw invalid_argument("theta: bad l or m");
    if (f.nvars() != m) throw dimension_mismatch("symmetric function must have m variables");
    if (!detail::is_symmetric(f)) throw not_symmetric("function is not symmetric in its variables");
    return detail::theta_with_prefactor(f, l, m, Monomial{});
}

inline DiffOperator theta(Kind kind, const Partition& lambda, int l, int m) {
    if (kind == Kind::D) throw invalid_argument("theta: use theta_d for type D");
    if (static_cast<int>(lambda.size()) != m || !lambda.fits(l))
        throw invalid_argument("partition " + lambda.str() + " is outside the box for l = " + std::to_string(l));
    return theta_from_symmetric(schur(kind, lambda, m), l, m);
}

struct LambdaSplit {
    std::vector<Partition> prime;         // lambda_2 >= 1
    std::vector<Partition> double_prime;  // lambda_2 = 0, includes (0,0)
    Partition zero{std::vector<int>{0, 0}};
};

inline LambdaSplit split_lambda(int l) {
    LambdaSplit s;
    for (const auto& p : enumerate_lambda(l, 2)) (p[1] >= 1 ? s.prime : s.double_prime).push_back(p);
    return s;
}

// m = 2 only. Prefactor 1 on lambda_2 >= 1, x_1..x_l on lambda_2 = 0 except
// (0,0), which takes (x_1..x_l)^2.
inline DiffOperator theta_d(const Partition& lambda, int l) {
    if (lambda.size() != 2 || !lambda.fits(l))
        throw invalid_argument("partition " + lambda.str() + " is outside the box for l = " + std::to_string(l));
    int power = lambda[1] >= 1 ? 0 : (lambda[0] == 0 ? 2 : 1);
    return detail::theta_with_prefactor(schur(Kind::D, lambda, 2), l, 2, detail::product_of_variables(l, power));
}

// (h^D_k / 2x_k) d_k^2 - (-1)^{l-1} (1/x_k) theta^D_(0,0); every coefficient
// is reduced to a polynomial by exact division.
inline DiffOperator eta_d(int k, int l) {
    detail::check_k(k, l);
    const Rational sign = (l - 1) % 2 == 0 ? Rational(1) : Rational(-1);
    const Monomial dk2 = Monomial::unit(k - 1, 2);
    const Polynomial xk = Polynomial::variable(l, k - 1);
    DiffOperator op(l, 2);

    Monomial others = detail::product_of_variables(l, 2);
    others.set(k - 1, 0);
    Polynomial top = detail::h_d(k, l) - Polynomial::monomial(l, others, sign);
    op.add_term(dk2, exact_divide(top, xk * Rational(2)));

    DiffOperator t0 = theta_d(Partition(std::vector<int>{0, 0}), l);
    for (const auto& [alpha, f] : t0.terms()) {
        if (alpha == dk2) continue;
        op.add_term(alpha, exact_divide(f, xk) * (-sign));
    }
    return op;
}

struct BasisSet {
    Kind kind = Kind::A;
    int l = 0;
    int m = 2;
    std::vector<DiffOperator> etas;
    std::vector<std::pair<Partition, DiffOperator>> thetas;
    bool certified = false;
    std::optional<Rational> c;
    std::optional<Certificate> certificate;
    std::vector<std::string> warnings;

    // etas first, then thetas in descending partition order.
    std::vector<DiffOperator> operators() const {
        std::vector<DiffOperator> out = etas;
        for (const auto& [p, op] : thetas) out.push_back(op);
        return out;
    }
};

namespace detail {

inline std::vector<int> exponent_formula(Kind kind, int l, int eta_d_degree) {
    std::vector<int> out;
    switch (kind) {
    case Kind::A:
        out.assign(static_cast<std::size_t>(l), l - 1);
        for (const auto& p : enumerate_lambda(l, 2)) out.push_back(p.weight());
        break;
    case Kind::B:
        out.assign(static_cast<std::size_t>(l), 2 * l - 1);
        for (const auto& p : enumerate_lambda(l, 2)) out.push_back(2 * p.weight() + 2);
        break;
    case Kind::D: {
        out.assign(static_cast<std::size_t>(l), eta_d_degree);
        auto s = split_lambda(l);
        for (const auto& p : s.prime) out.push_back(2 * p[0] + 2 * p[1] - 2);
        for (const auto& p : s.double_prime)
            if (p[0] >= 1) out.push_back(2 * p[0] - 2 + l);
        out.push_back(2 * l - 2);
        break;
    }
    }
    std::sort(out.begin(), out.end());
    return out;
}

} // namespace detail

// Degree multisets of the m = 2 families, sorted ascending. The stated form
// puts the eta^D block at 2l - 2; the etas actually have degree 2l - 3
// (h^D_k has degree 2l - 2 and is divided by x_k), which is what
// exponent_multiset returns. Only the latter sums to deg Q^l.
inline std::vector<int> stated_exponents(Kind kind, int l) { return detail::exponent_formula(kind, l, 2 * l - 2); }

inline std::vector<int> exponent_multiset(Kind kind, int l) { return detail::exponent_formula(kind, l, 2 * l - 3); }

struct BuildOptions {
    bool certify = true;
    CertifyOptions certify_options;
};

// The m = 2 operator family for the given kind. Type D needs l >= 3; l = 3
// is built with a warning.
inline BasisSet build_basis(Kind kind, int l, const BuildOptions& opt = {}) {
    if (l < 2 || l > kMaxVars) throw invalid_argument("l must lie in [2, " + std::to_string(kMaxVars) + "]");
    BasisSet set;
    set.kind = kind;
    set.l = l;
    set.m = 2;
    if (kind == Kind::D) {
        if (l < 3) throw invalid_argument("type D needs l >= 3");
        if (l == 3) set.warnings.push_back("type D with l = 3: the arrangement coincides with A3; certification result is reported as computed");
    }
    auto lambdas = enumerate_lambda(l, 2);
    set.etas.resize(static_cast<std::size_t>(l));
    set.thetas.resize(lambdas.size());
    const std::size_t total = static_cast<std::size_t>(l) + lambdas.size();
    parallel_for(total, [&](std::size_t i) {
        if (i < static_cast<std::size_t>(l)) {
            int k = static_cast<int>(i) + 1;
            set.etas[i] = kind == Kind::D ? eta_d(k, l) : eta(kind, k, l, 2);
        } else {
            const Partition& p = lambdas[i - static_cast<std::size_t>(l)];
            set.thetas[i - static_cast<std::size_t>(l)] = {p, kind == Kind::D ? theta_d(p, l) : theta(kind, p, l, 2)};
        }
    });
    if (opt.certify) {
        Certificate cert = saito_holm_certify(set.operators(), build_arrangement(kind, l), opt.certify_options);
        set.certified = cert.is_basis;
        set.c = cert.c;
        set.certificate = std::move(cert);
    }
    return set;
}

} // namespace coxops
