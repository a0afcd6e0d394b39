#pragma once

// Random generators and small independent oracles shared by the unit tests.

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <random>
#include <vector>

#include "coxops/coxops.hpp"

namespace testing_support {

using namespace coxops;

inline std::mt19937_64& rng() {
    static std::mt19937_64 gen(0xC0C5EEDULL);
    return gen;
}

inline int uniform(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng()); }

inline Rational random_rational(int range = 9, int max_den = 4) {
    int num = 0;
    while (num == 0) num = uniform(-range, range);
    Rational q(num, uniform(1, max_den));
    q.canonicalize();
    return q;
}

inline Monomial random_monomial(int nvars, int max_exp, bool laurent = false) {
    Monomial m;
    for (int i = 0; i < nvars; ++i) m.set(i, uniform(laurent ? -max_exp : 0, max_exp));
    return m;
}

template <class P = Polynomial>
P random_polynomial(int nvars, int terms, int max_exp, bool laurent = false) {
    std::vector<Term<Rational>> t;
    for (int i = 0; i < terms; ++i) t.push_back(Term<Rational>{random_monomial(nvars, max_exp, laurent), random_rational()});
    return P::from_terms(nvars, std::move(t));
}

inline Polynomial random_nonzero(int nvars, int terms, int max_exp) {
    for (;;) {
        auto p = random_polynomial(nvars, terms, max_exp);
        if (!p.is_zero()) return p;
    }
}

// Homogeneous of the given degree.
inline Polynomial random_homogeneous(int nvars, int degree, int terms) {
    std::vector<Term<Rational>> t;
    for (int i = 0; i < terms; ++i) {
        Monomial m;
        int left = degree;
        for (int v = 0; v + 1 < nvars; ++v) {
            int e = uniform(0, left);
            m.set(v, e);
            left -= e;
        }
        m.set(nvars - 1, left);
        t.push_back(Term<Rational>{m, random_rational()});
    }
    return Polynomial::from_terms(nvars, std::move(t));
}

inline PolyMatrix random_int_matrix(int n, int range = 9) {
    PolyMatrix a(n, n, 1);
    for (int r = 0; r < n; ++r)
        for (int c = 0; c < n; ++c) a(r, c) = Polynomial::constant(1, Rational(uniform(-range, range)));
    return a;
}

inline PolyMatrix random_poly_matrix(int n, int nvars, int terms, int max_exp) {
    PolyMatrix a(n, n, nvars);
    for (int r = 0; r < n; ++r)
        for (int c = 0; c < n; ++c) a(r, c) = random_polynomial(nvars, terms, max_exp);
    return a;
}

// Leibniz formula: an oracle independent of elimination and expansion.
template <class P>
P leibniz_det(const basic_matrix<P>& a) {
    const int n = a.rows();
    std::vector<int> perm(static_cast<std::size_t>(n));
    std::iota(perm.begin(), perm.end(), 0);
    P total(a.nvars());
    do {
        P term = P::constant(a.nvars(), typename P::coeff_type(permutation_sign(perm)));
        for (int r = 0; r < n; ++r) term *= a(r, perm[static_cast<std::size_t>(r)]);
        total += term;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return total;
}

inline Polynomial x(int nvars, int i) { return Polynomial::variable(nvars, i - 1); }
inline Polynomial c(int nvars, long v) { return Polynomial::constant(nvars, Rational(v)); }
inline Polynomial q(int nvars, long num, long den) { return Polynomial::constant(nvars, Rational(num, den)); }

inline Polynomial vandermonde(int l, int power = 1) {
    Polynomial v = c(l, 1);
    for (int i = 1; i <= l; ++i)
        for (int j = i + 1; j <= l; ++j) v *= x(l, i).pow(static_cast<unsigned>(power)) - x(l, j).pow(static_cast<unsigned>(power));
    return v;
}

} // namespace testing_support
