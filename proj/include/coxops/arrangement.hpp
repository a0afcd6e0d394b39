#pragma once

#include <string>
#include <vector>

#include "coxops/errors.hpp"
#include "coxops/kind.hpp"
#include "coxops/polynomial.hpp"

namespace coxops {

// Coxeter arrangement in l variables: one linear form per hyperplane and the
// defining polynomial Q, kept both as the form list and expanded.
struct Arrangement {
    Kind kind = Kind::A;
    int l = 0;
    std::vector<Polynomial> forms;
    Polynomial q;

    std::string name() const {
        int rank = kind == Kind::A ? l - 1 : l;
        return to_string(kind) + std::to_string(rank);
    }
};

// Forms x_i - x_j (all kinds), x_i + x_j (B, D) for i < j, then x_i (B).
inline Arrangement build_arrangement(Kind kind, int l) {
    if (l < 2 || l > kMaxVars) throw invalid_argument("arrangement: l must be in [2, " + std::to_string(kMaxVars) + "]");
    Arrangement a;
    a.kind = kind;
    a.l = l;
    for (int i = 0; i < l; ++i)
        for (int j = i + 1; j < l; ++j) {
            auto xi = Polynomial::variable(l, i);
            auto xj = Polynomial::variable(l, j);
            a.forms.push_back(xi - xj);
            if (kind != Kind::A) a.forms.push_back(xi + xj);
        }
    if (kind == Kind::B)
        for (int i = 0; i < l; ++i) a.forms.push_back(Polynomial::variable(l, i));
    a.q = Polynomial::constant(l, Rational(1));
    for (const auto& f : a.forms) a.q *= f;
    return a;
}

// s_m = C(l+m-1, m): the number of operators in a basis of order m.
inline std::int64_t s_m_size(int l, int m) {
    if (l < 1 || m < 1) throw invalid_argument("s_m needs l >= 1 and m >= 1");
    return binomial_small(l + m - 1, m);
}

// t_m = C(l+m-2, m-1): the exponent of Q in the Saito-Holm criterion.
inline std::int64_t t_m_exponent(const Arrangement& a, int m) {
    if (m < 1) throw invalid_argument("t_m needs m >= 1");
    return binomial_small(a.l + m - 2, m - 1);
}

} // namespace coxops
