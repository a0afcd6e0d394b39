#pragma once

#include <cctype>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "coxops/arrangement.hpp"
#include "coxops/bases.hpp"
#include "coxops/combinatorics.hpp"
#include "coxops/diffop.hpp"
#include "coxops/errors.hpp"
#include "coxops/kind.hpp"
#include "coxops/parallel.hpp"

namespace coxops {

// w e_k = a_k e_{pi(k)}, stored 0-based. On coordinates x_k -> a_k x_{pi(k)}
// and d_k -> a_k d_{pi(k)}.
class SignedPermutation {
public:
    SignedPermutation() = default;

    static SignedPermutation identity(int l) {
        check_l(l);
        SignedPermutation w;
        for (int k = 0; k < l; ++k) {
            w.perm_.push_back(k);
            w.sign_.push_back(1);
        }
        return w;
    }

    SignedPermutation(std::vector<int> perm, std::vector<int> signs) : perm_(std::move(perm)), sign_(std::move(signs)) {
        check_l(static_cast<int>(perm_.size()));
        if (sign_.size() != perm_.size()) throw invalid_argument("signed permutation: sign count differs from size");
        std::vector<char> seen(perm_.size(), 0);
        for (int p : perm_) {
            if (p < 0 || p >= size() || seen[static_cast<std::size_t>(p)])
                throw invalid_argument("signed permutation: not a bijection");
            seen[static_cast<std::size_t>(p)] = 1;
        }
        for (int s : sign_)
            if (s != 1 && s != -1) throw invalid_argument("signed permutation: signs must be +1 or -1");
    }

    // sigma_{i,j}, 1-based.
    static SignedPermutation transposition(int l, int i, int j) {
        auto w = identity(l);
        if (i < 1 || j < 1 || i > l || j > l || i == j) throw invalid_argument("transposition indices out of range");
        std::swap(w.perm_[static_cast<std::size_t>(i - 1)], w.perm_[static_cast<std::size_t>(j - 1)]);
        return w;
    }

    // tau_i: sign change of the i-th coordinate, 1-based.
    static SignedPermutation sign_change(int l, int i) {
        auto w = identity(l);
        if (i < 1 || i > l) throw invalid_argument("sign change index out of range");
        w.sign_[static_cast<std::size_t>(i - 1)] = -1;
        return w;
    }

    int size() const { return static_cast<int>(perm_.size()); }
    int image(int k) const { return perm_[static_cast<std::size_t>(k)]; }
    int sign(int k) const { return sign_[static_cast<std::size_t>(k)]; }

    int sign_product() const {
        int s = 1;
        for (int a : sign_) s *= a;
        return s;
    }
    bool is_permutation() const { return sign_product() == 1 && std::all_of(sign_.begin(), sign_.end(), [](int a) { return a == 1; }); }

    int det() const { return permutation_sign(perm_) * sign_product(); }

    // (a * b) e_k = a (b e_k).
    friend SignedPermutation operator*(const SignedPermutation& a, const SignedPermutation& b) {
        if (a.size() != b.size()) throw dimension_mismatch("signed permutations of different size");
        SignedPermutation r = b;
        for (int k = 0; k < b.size(); ++k) {
            r.perm_[static_cast<std::size_t>(k)] = a.image(b.image(k));
            r.sign_[static_cast<std::size_t>(k)] = b.sign(k) * a.sign(b.image(k));
        }
        return r;
    }

    SignedPermutation inverse() const {
        SignedPermutation r = *this;
        for (int k = 0; k < size(); ++k) {
            r.perm_[static_cast<std::size_t>(image(k))] = k;
            r.sign_[static_cast<std::size_t>(image(k))] = sign(k);
        }
        return r;
    }

    // Matrix of the action on V: column k holds a_k at row pi(k).
    std::vector<std::vector<int>> matrix() const {
        std::vector<std::vector<int>> m(perm_.size(), std::vector<int>(perm_.size(), 0));
        for (int k = 0; k < size(); ++k) m[static_cast<std::size_t>(image(k))][static_cast<std::size_t>(k)] = sign(k);
        return m;
    }

    // "[-2,1,3]": entry k is a_k * (pi(k) + 1).
    std::string str() const {
        std::string s = "[";
        for (int k = 0; k < size(); ++k) s += (k ? "," : "") + std::to_string(sign(k) * (image(k) + 1));
        return s + "]";
    }

    friend bool operator==(const SignedPermutation&, const SignedPermutation&) = default;

private:
    static void check_l(int l) {
        if (l < 1 || l > kMaxVars) throw invalid_argument("signed permutation size out of range");
    }

    std::vector<int> perm_;
    std::vector<int> sign_;
};

// Words in the generators: "s12" (sigma_{1,2}), "t3" (tau_3), "s10,11" for
// two-digit indices, "e" for the identity; factors separated by '*' or
// spaces, or simply juxtaposed ("s34t3t4"). The word acts right to left.
inline SignedPermutation parse_signed_permutation(std::string_view text, int l) {
    SignedPermutation w = SignedPermutation::identity(l);
    std::size_t i = 0;
    auto number = [&](std::string& digits) {
        while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) digits += text[i++];
    };
    bool any = false;
    while (i < text.size()) {
        char ch = text[i];
        if (ch == '*' || std::isspace(static_cast<unsigned char>(ch))) {
            ++i;
            continue;
        }
        ++i;
        if (ch == 'e') {
            any = true;
            continue;
        }
        std::string a;
        number(a);
        if (a.empty()) throw parse_error("group element: expected an index after '" + std::string(1, ch) + "'");
        if (ch == 't') {
            w = w * SignedPermutation::sign_change(l, std::stoi(a));
        } else if (ch == 's') {
            int p = 0, q = 0;
            if (i < text.size() && text[i] == ',') {
                ++i;
                std::string b;
                number(b);
                if (b.empty()) throw parse_error("group element: expected a second index after ','");
                p = std::stoi(a);
                q = std::stoi(b);
            } else if (a.size() == 2) {
                p = a[0] - '0';
                q = a[1] - '0';
            } else {
                throw parse_error("group element: write s<i><j> or s<i>,<j>");
            }
            w = w * SignedPermutation::transposition(l, p, q);
        } else {
            throw parse_error("group element: unknown generator '" + std::string(1, ch) + "'");
        }
        any = true;
    }
    if (!any) throw parse_error("group element: empty word");
    return w;
}

struct GeneratorSet {
    Kind kind = Kind::A;
    int l = 0;
    std::vector<std::pair<std::string, SignedPermutation>> generators;
};

// A: sigma_{i,i+1}; B: those and tau_l; D: those and sigma_{l-1,l} tau_{l-1} tau_l.
inline GeneratorSet generators(Kind kind, int l) {
    if (l < 2 || l > kMaxVars) throw invalid_argument("generators need 2 <= l <= " + std::to_string(kMaxVars));
    GeneratorSet g;
    g.kind = kind;
    g.l = l;
    for (int i = 1; i < l; ++i)
        g.generators.emplace_back("s" + std::to_string(i) + (l > 9 ? "," : "") + std::to_string(i + 1),
                                  SignedPermutation::transposition(l, i, i + 1));
    if (kind == Kind::B) g.generators.emplace_back("t" + std::to_string(l), SignedPermutation::sign_change(l, l));
    if (kind == Kind::D) {
        auto w = SignedPermutation::transposition(l, l - 1, l) * SignedPermutation::sign_change(l, l - 1) *
                 SignedPermutation::sign_change(l, l);
        g.generators.emplace_back("s" + std::to_string(l - 1) + (l > 9 ? "," : "") + std::to_string(l) + "t" +
                                      std::to_string(l - 1) + "t" + std::to_string(l),
                                  w);
    }
    return g;
}

// Is w an element of W^kind? (A: plain permutations; D: even sign changes.)
inline bool belongs_to(const SignedPermutation& w, Kind kind) {
    if (kind == Kind::A) return w.is_permutation();
    if (kind == Kind::D) return w.sign_product() == 1;
    return true;
}

inline Polynomial act_poly(const SignedPermutation& w, const Polynomial& f) {
    if (f.nvars() != w.size()) throw dimension_mismatch("group element and polynomial differ in dimension");
    std::vector<Term<Rational>> out;
    out.reserve(f.size());
    for (const auto& t : f.terms()) {
        Monomial e;
        int s = 1;
        for (int k = 0; k < w.size(); ++k) {
            e.set(w.image(k), t.exp[k]);
            if (w.sign(k) < 0 && t.exp[k] % 2 != 0) s = -s;
        }
        out.push_back(Term<Rational>{e, s < 0 ? Rational(-t.coef) : t.coef});
    }
    return Polynomial::from_terms(f.nvars(), std::move(out));
}

// f_alpha d^alpha -> (w f_alpha) (prod a_k^{alpha_k}) d^{pi(alpha)}.
inline DiffOperator act_op(const SignedPermutation& w, const DiffOperator& theta) {
    if (theta.l() != w.size()) throw dimension_mismatch("group element and operator differ in dimension");
    DiffOperator r(theta.l(), theta.m());
    for (const auto& [alpha, f] : theta.terms()) {
        Monomial beta;
        int s = 1;
        for (int k = 0; k < w.size(); ++k) {
            beta.set(w.image(k), alpha[k]);
            if (w.sign(k) < 0 && alpha[k] % 2 != 0) s = -s;
        }
        Polynomial g = act_poly(w, f);
        r.add_term(beta, s < 0 ? -g : g);
    }
    return r;
}

// (w theta)(f) == w (theta(w^{-1} f)) on every sample.
inline bool check_defining_property(const SignedPermutation& w, const DiffOperator& theta,
                                    const std::vector<Polynomial>& samples) {
    DiffOperator wt = act_op(w, theta);
    SignedPermutation inv = w.inverse();
    for (const auto& f : samples)
        if (apply(wt, f) != act_poly(w, apply(theta, act_poly(inv, f)))) return false;
    return true;
}

inline bool is_invariant(const DiffOperator& theta, const GeneratorSet& g) {
    if (theta.l() != g.l) throw dimension_mismatch("operator and generator set differ in dimension");
    for (const auto& [name, w] : g.generators)
        if (act_op(w, theta) != theta) return false;
    return true;
}

// The eta family of the m = 2 basis.
inline std::vector<DiffOperator> eta_family(Kind kind, int l) {
    std::vector<DiffOperator> etas;
    for (int k = 1; k <= l; ++k) etas.push_back(kind == Kind::D ? eta_d(k, l) : eta(kind, k, l, 2));
    return etas;
}

struct EtaAction {
    std::string generator;
    SignedPermutation w;
    std::vector<std::vector<int>> matrix;    // column k: coordinates of w eta_k
    std::vector<std::vector<int>> standard;  // action on e_1..e_l
    bool matches_standard = false;
};

namespace detail {

// Column k of the matrix: w eta_k = +-eta_j, matched term by term.
inline std::vector<std::vector<int>> signed_images(const SignedPermutation& w, const std::vector<DiffOperator>& etas,
                                                   const std::string& name) {
    const std::size_t l = etas.size();
    std::vector<std::vector<int>> m(l, std::vector<int>(l, 0));
    for (std::size_t k = 0; k < l; ++k) {
        DiffOperator img = act_op(w, etas[k]);
        bool found = false;
        for (std::size_t j = 0; j < l && !found; ++j) {
            if (img == etas[j]) {
                m[j][k] = 1;
                found = true;
            } else if (img == -etas[j]) {
                m[j][k] = -1;
                found = true;
            }
        }
        if (!found)
            throw not_closed("image of eta_" + std::to_string(k + 1) + " under " + name +
                             " is not a signed eta");
    }
    return m;
}

} // namespace detail

inline std::vector<EtaAction> eta_action_matrices(Kind kind, int l) {
    auto gens = generators(kind, l);
    auto etas = eta_family(kind, l);
    std::vector<EtaAction> out(gens.generators.size());
    parallel_for(out.size(), [&](std::size_t i) {
        const auto& [name, w] = gens.generators[i];
        EtaAction a;
        a.generator = name;
        a.w = w;
        a.matrix = detail::signed_images(w, etas, name);
        a.standard = w.matrix();
        a.matches_standard = a.matrix == a.standard;
        out[i] = std::move(a);
    });
    return out;
}

// Rational null space (basis vectors) of an integer matrix.
inline std::vector<std::vector<Rational>> nullspace(std::vector<std::vector<Rational>> a, int cols) {
    int rows = static_cast<int>(a.size());
    std::vector<int> pivot_col;
    int r = 0;
    for (int c = 0; c < cols && r < rows; ++c) {
        int p = r;
        while (p < rows && coxops::is_zero(a[static_cast<std::size_t>(p)][static_cast<std::size_t>(c)])) ++p;
        if (p == rows) continue;
        std::swap(a[static_cast<std::size_t>(p)], a[static_cast<std::size_t>(r)]);
        auto& row = a[static_cast<std::size_t>(r)];
        Rational inv = 1 / row[static_cast<std::size_t>(c)];
        for (auto& v : row) v *= inv;
        for (int q = 0; q < rows; ++q) {
            if (q == r) continue;
            auto& other = a[static_cast<std::size_t>(q)];
            Rational f = other[static_cast<std::size_t>(c)];
            if (coxops::is_zero(f)) continue;
            for (int j = 0; j < cols; ++j) other[static_cast<std::size_t>(j)] -= f * row[static_cast<std::size_t>(j)];
        }
        pivot_col.push_back(c);
        ++r;
    }
    std::vector<std::vector<Rational>> basis;
    std::vector<char> is_pivot(static_cast<std::size_t>(cols), 0);
    for (int c : pivot_col) is_pivot[static_cast<std::size_t>(c)] = 1;
    for (int free = 0; free < cols; ++free) {
        if (is_pivot[static_cast<std::size_t>(free)]) continue;
        std::vector<Rational> v(static_cast<std::size_t>(cols), Rational(0));
        v[static_cast<std::size_t>(free)] = 1;
        for (std::size_t i = 0; i < pivot_col.size(); ++i)
            v[static_cast<std::size_t>(pivot_col[i])] = -a[i][static_cast<std::size_t>(free)];
        basis.push_back(std::move(v));
    }
    return basis;
}

// Coefficient vectors a with sum a_k eta_k fixed by every generator: the null
// space of the stacked (M_g - I).
inline std::vector<std::vector<Rational>> invariant_eta_combinations(const std::vector<EtaAction>& actions, int l) {
    std::vector<std::vector<Rational>> stacked;
    for (const auto& a : actions)
        for (int i = 0; i < l; ++i) {
            std::vector<Rational> row(static_cast<std::size_t>(l));
            for (int j = 0; j < l; ++j)
                row[static_cast<std::size_t>(j)] = a.matrix[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] - (i == j ? 1 : 0);
            stacked.push_back(std::move(row));
        }
    return nullspace(std::move(stacked), l);
}

// Action of the generators on a full basis set: thetas fixed pointwise, etas
// moving by the standard signed-permutation matrices, every image still in
// D^(2)(arrangement).
struct BasisActionReport {
    bool thetas_invariant = true;
    bool etas_standard = true;
    bool closed = true;
    std::vector<std::string> failures;

    bool ok() const { return thetas_invariant && etas_standard && closed; }
};

inline BasisActionReport check_basis_action(const BasisSet& set) {
    BasisActionReport rep;
    auto gens = generators(set.kind, set.l);
    auto arr = build_arrangement(set.kind, set.l);
    auto ops = set.operators();
    const std::size_t ng = gens.generators.size();
    std::vector<char> fixed(ng * set.thetas.size(), 1), closed(ng * ops.size(), 1);
    parallel_for(ng * ops.size(), [&](std::size_t idx) {
        const auto& w = gens.generators[idx / ops.size()].second;
        std::size_t i = idx % ops.size();
        DiffOperator img = act_op(w, ops[i]);
        closed[idx] = member_of(img, arr) ? 1 : 0;
        if (i >= set.etas.size()) fixed[(idx / ops.size()) * set.thetas.size() + (i - set.etas.size())] = img == ops[i];
    });
    for (std::size_t g = 0; g < ng; ++g) {
        const auto& name = gens.generators[g].first;
        for (std::size_t t = 0; t < set.thetas.size(); ++t)
            if (!fixed[g * set.thetas.size() + t]) {
                rep.thetas_invariant = false;
                rep.failures.push_back("theta" + set.thetas[t].first.str() + " moved by " + name);
            }
        for (std::size_t i = 0; i < ops.size(); ++i)
            if (!closed[g * ops.size() + i]) {
                rep.closed = false;
                rep.failures.push_back("operator " + std::to_string(i + 1) + " leaves the module under " + name);
            }
        try {
            auto m = detail::signed_images(gens.generators[g].second, set.etas, name);
            if (m != gens.generators[g].second.matrix()) {
                rep.etas_standard = false;
                rep.failures.push_back("eta matrix of " + name + " differs from its action on V");
            }
        } catch (const not_closed& e) {
            rep.etas_standard = false;
            rep.failures.push_back(e.what());
        }
    }
    return rep;
}

} // namespace coxops
