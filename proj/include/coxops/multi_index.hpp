#pragma once

#include <vector>

#include "coxops/combinatorics.hpp"
#include "coxops/monomial.hpp"
#include "coxops/rational.hpp"

namespace coxops {

// alpha in N^l indexing d^alpha = d_1^{alpha_1} ... d_l^{alpha_l}. Shares the
// exponent-vector representation (and its lex order) with monomials.
using MultiIndex = Monomial;

inline int order(const MultiIndex& alpha) { return alpha.total_degree(); }

inline Integer alpha_factorial(const MultiIndex& alpha) {
    Integer r = 1;
    for (int i = 0; i < kMaxVars; ++i) r *= factorial(static_cast<unsigned>(alpha[i]));
    return r;
}

// Every alpha with |alpha| = m in l variables, descending lex: (m,0,..,0)
// first. This is the canonical column order of coefficient matrices.
inline std::vector<MultiIndex> multi_indices(int l, int m) {
    if (l < 1 || l > kMaxVars) throw invalid_argument("multi-index dimension out of range");
    if (m < 0) throw invalid_argument("multi-index order must be nonnegative");
    std::vector<MultiIndex> out;
    for (const auto& c : compositions_desc(l, m)) out.emplace_back(std::span<const int>(c));
    return out;
}

} // namespace coxops
