#pragma once

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "coxops/arrangement.hpp"
#include "coxops/errors.hpp"
#include "coxops/modular.hpp"
#include "coxops/multi_index.hpp"
#include "coxops/parallel.hpp"
#include "coxops/poly_matrix.hpp"
#include "coxops/polynomial.hpp"

namespace coxops {

// theta = sum_{|alpha| = m} f_alpha d^alpha with polynomial coefficients.
// Terms are kept in descending lex order of alpha; zero coefficients are
// never stored.
class DiffOperator {
public:
    using term_map = std::map<MultiIndex, Polynomial, std::greater<MultiIndex>>;

    DiffOperator() = default;
    DiffOperator(int l, int m) : l_(l), m_(m) {
        if (l < 1 || l > kMaxVars) throw invalid_argument("operator dimension out of range");
        if (m < 1) throw invalid_argument("operator order must be positive");
    }

    int l() const { return l_; }
    int m() const { return m_; }
    const term_map& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    void add_term(const MultiIndex& alpha, const Polynomial& f) {
        check_alpha(alpha);
        if (f.nvars() != l_) throw dimension_mismatch("operator coefficient has the wrong number of variables");
        if (f.is_zero()) return;
        auto it = terms_.find(alpha);
        if (it == terms_.end()) {
            terms_.emplace(alpha, f);
            return;
        }
        it->second += f;
        if (it->second.is_zero()) terms_.erase(it);
    }

    Polynomial coefficient(const MultiIndex& alpha) const {
        check_alpha(alpha);
        auto it = terms_.find(alpha);
        return it == terms_.end() ? Polynomial(l_) : it->second;
    }

    bool is_homogeneous() const { return homogeneous_degree().has_value(); }

    // Common degree of all coefficients; NonHomogeneous otherwise.
    int degree() const {
        auto d = homogeneous_degree();
        if (!d) throw non_homogeneous("operator is not homogeneous");
        return *d;
    }

    DiffOperator operator-() const {
        DiffOperator r = *this;
        for (auto& [a, f] : r.terms_) f = -f;
        return r;
    }
    DiffOperator& operator+=(const DiffOperator& o) {
        check_same(o);
        for (const auto& [a, f] : o.terms_) add_term(a, f);
        return *this;
    }
    DiffOperator& operator-=(const DiffOperator& o) { return *this += -o; }
    friend DiffOperator operator+(DiffOperator a, const DiffOperator& b) { return a += b; }
    friend DiffOperator operator-(DiffOperator a, const DiffOperator& b) { return a -= b; }

    friend DiffOperator operator*(const Rational& c, const DiffOperator& op) {
        DiffOperator r(op.l_, op.m_);
        if (coxops::is_zero(c)) return r;
        for (const auto& [a, f] : op.terms_) r.terms_.emplace(a, f * c);
        return r;
    }
    // Left multiplication by a polynomial: g * theta = sum (g f_alpha) d^alpha.
    friend DiffOperator operator*(const Polynomial& g, const DiffOperator& op) {
        if (g.nvars() != op.l_) throw dimension_mismatch("multiplier has the wrong number of variables");
        DiffOperator r(op.l_, op.m_);
        for (const auto& [a, f] : op.terms_) r.add_term(a, g * f);
        return r;
    }

    friend bool operator==(const DiffOperator& a, const DiffOperator& b) {
        return a.l_ == b.l_ && a.m_ == b.m_ && a.terms_ == b.terms_;
    }

private:
    void check_alpha(const MultiIndex& alpha) const {
        if (!alpha.is_nonnegative() || alpha.support_end() >= l_)
            throw invalid_argument("multi-index outside N^" + std::to_string(l_));
        if (order(alpha) != m_) throw invalid_argument("multi-index order differs from operator order");
    }
    void check_same(const DiffOperator& o) const {
        if (l_ != o.l_ || m_ != o.m_) throw dimension_mismatch("operators differ in dimension or order");
    }
    std::optional<int> homogeneous_degree() const {
        std::optional<int> d;
        if (terms_.empty()) return d;
        for (const auto& [a, f] : terms_) {
            if (!f.is_homogeneous()) return std::nullopt;
            if (d && *d != f.degree()) return std::nullopt;
            d = f.degree();
        }
        return d;
    }

    int l_ = 1;
    int m_ = 1;
    term_map terms_;
};

// d^alpha f.
inline Polynomial differentiate(const Polynomial& f, const MultiIndex& alpha) {
    std::vector<Term<Rational>> out;
    for (const auto& t : f.terms()) {
        if (!alpha.divides(t.exp)) continue;
        Rational c = t.coef;
        for (int i = 0; i < f.nvars(); ++i)
            for (int k = 0; k < alpha[i]; ++k) c *= t.exp[i] - k;
        out.push_back(Term<Rational>{t.exp - alpha, std::move(c)});
    }
    // Subtracting a fixed alpha preserves the order of the surviving terms.
    return Polynomial::from_sorted_terms(f.nvars(), std::move(out));
}

inline Polynomial apply(const DiffOperator& theta, const Polynomial& f) {
    if (f.nvars() != theta.l()) throw dimension_mismatch("operator and polynomial differ in dimension");
    Polynomial r(theta.l());
    for (const auto& [alpha, coef] : theta.terms()) {
        Polynomial d = differentiate(f, alpha);
        if (!d.is_zero()) r += coef * d;
    }
    return r;
}

// theta in D^(m)(pS) for a linear form p: theta(p x^beta) in pS for all
// |beta| = m - 1.
inline bool member_of_form(const DiffOperator& theta, const Polynomial& p) {
    if (p.nvars() != theta.l()) throw dimension_mismatch("form and operator differ in dimension");
    if (p.is_zero() || !p.is_homogeneous() || p.degree() != 1)
        throw invalid_argument("membership test needs a nonzero linear form");
    for (const auto& beta : multi_indices(theta.l(), theta.m() - 1)) {
        Polynomial g = apply(theta, p * Polynomial::monomial(theta.l(), beta));
        if (!is_divisible_by(g, p)) return false;
    }
    return true;
}

inline bool member_of(const DiffOperator& theta, const Arrangement& arr) {
    if (theta.l() != arr.l) throw dimension_mismatch("operator and arrangement differ in dimension");
    std::atomic<bool> ok{true};
    parallel_for(arr.forms.size(), [&](std::size_t i) {
        if (ok.load() && !member_of_form(theta, arr.forms[i])) ok.store(false);
    });
    return ok.load();
}

// Entry (i, j) is the coefficient of d^{alpha(j)} in ops[i], columns in
// descending lex order of alpha.
inline PolyMatrix coefficient_matrix(const std::vector<DiffOperator>& ops) {
    if (ops.empty()) throw invalid_argument("coefficient matrix of an empty operator list");
    const int l = ops.front().l(), m = ops.front().m();
    for (const auto& op : ops)
        if (op.l() != l || op.m() != m) throw invalid_argument("operators of mixed dimension or order");
    auto alphas = multi_indices(l, m);
    if (ops.size() != alphas.size())
        throw invalid_argument("expected " + std::to_string(alphas.size()) + " operators, got " +
                               std::to_string(ops.size()));
    const int n = static_cast<int>(alphas.size());
    PolyMatrix mat(n, n, l);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) mat(i, j) = ops[static_cast<std::size_t>(i)].coefficient(alphas[static_cast<std::size_t>(j)]);
    return mat;
}

inline std::vector<int> exponents(const std::vector<DiffOperator>& ops) {
    std::vector<int> out;
    out.reserve(ops.size());
    for (const auto& op : ops) out.push_back(op.degree());
    std::sort(out.begin(), out.end());
    return out;
}

struct CertifyOptions {
    // Cores with at most this many rows are expanded; larger ones go through
    // the modular evaluation test.
    int expand_limit = 10;
    std::uint64_t max_grid_points = 400'000'000ULL;
    bool check_membership = true;
};

// Outcome of the determinant criterion. The determinant is kept factored:
// det = det_unit * prod det_factors[i]^power. When the matrix is not a basis
// and its core was too large to expand, det_known is false.
struct Certificate {
    bool is_basis = false;
    std::optional<Rational> c;
    std::int64_t t_m = 0;
    std::string method;
    bool det_known = true;
    Rational det_unit{0};
    std::vector<std::pair<Polynomial, unsigned>> det_factors;
    std::uint64_t grid_points = 0;
    std::size_t grid_primes = 0;

    bool det_is_zero() const { return det_known && coxops::is_zero(det_unit); }

    Polynomial det(int nvars) const {
        if (!det_known) throw error("determinant was not computed");
        Polynomial r = Polynomial::constant(nvars, det_unit);
        if (coxops::is_zero(det_unit)) return Polynomial(nvars);
        for (const auto& [f, e] : det_factors) r *= f.pow(e);
        return r;
    }
};

namespace detail {

inline Integer evaluate(const IntPolynomial& f, const std::vector<Integer>& pt) {
    Integer s = 0;
    for (const auto& t : f.terms()) {
        Integer v = t.coef;
        for (int i = 0; i < f.nvars(); ++i) {
            Integer pw;
            mpz_pow_ui(pw.get_mpz_t(), pt[static_cast<std::size_t>(i)].get_mpz_t(),
                       static_cast<unsigned long>(t.exp[i]));
            v *= pw;
        }
        s += v;
    }
    return s;
}

inline IntPolynomial to_integer_poly(const Polynomial& f) {
    return map_coefficients<Integer>(f, [](const Rational& q) {
        if (q.get_den() != 1) throw invalid_argument("form has non-integer coefficients");
        return Integer(q.get_num());
    });
}

inline Polynomial to_rational_poly(const IntPolynomial& f) {
    return map_coefficients<Rational>(f, [](const Integer& z) { return Rational(z); });
}

// Integer point where every form is nonzero.
inline std::vector<Integer> generic_point(const std::vector<IntPolynomial>& forms, int nvars) {
    for (long shift = 0;; ++shift) {
        std::vector<Integer> pt;
        for (long i = 0; i < nvars; ++i) pt.emplace_back((i + 1) * (i + 1 + shift) + shift);
        if (std::all_of(forms.begin(), forms.end(), [&](const IntPolynomial& f) { return evaluate(f, pt) != 0; }))
            return pt;
    }
}

inline Integer constant_determinant(const IntPolyMatrix& k, const std::vector<Integer>& pt) {
    const int n = k.rows();
    IntPolyMatrix v(n, n, 1);
    for (int r = 0; r < n; ++r)
        for (int c = 0; c < n; ++c) v(r, c) = IntPolynomial::constant(1, evaluate(k(r, c), pt));
    IntPolynomial d = bareiss(v);
    return d.is_zero() ? Integer(0) : d.constant_value();
}

} // namespace detail

// det mat = c Q^t with c a nonzero rational? mat must be square with
// polynomial entries in arr.l variables. Linear forms are divided out of the
// peeled factors one at a time, so Q^t itself is never expanded.
inline Certificate certify_matrix(const PolyMatrix& mat, const Arrangement& arr, std::int64_t t,
                                  const CertifyOptions& opt = {}) {
    if (!mat.is_square()) throw invalid_argument("coefficient matrix is not square");
    if (mat.nvars() != arr.l) throw dimension_mismatch("matrix and arrangement differ in dimension");
    Certificate cert;
    cert.t_m = t;
    const int nv = arr.l;

    IntPolyMatrix im;
    Integer scale = detail::clear_row_denominators(mat, im);
    std::vector<IntPolynomial> factors;
    int sign = 1;
    bool zero = false;
    IntPolyMatrix core = detail::peel_sparse_lines(std::move(im), factors, sign, zero);
    if (zero) {
        cert.method = "peeled";
        return cert;
    }
    Rational unit(Integer(sign), scale);
    unit.canonicalize();

    std::vector<IntPolynomial> forms;
    for (const auto& f : arr.forms) forms.push_back(detail::to_integer_poly(f));
    std::vector<std::int64_t> power(forms.size(), 0);
    std::vector<IntPolynomial> leftover;

    // Strip every hyperplane form from f, recording multiplicities.
    auto strip = [&](IntPolynomial f) {
        for (std::size_t h = 0; h < forms.size() && !f.is_constant(); ++h) {
            IntPolynomial q;
            while (!f.is_constant() && detail::try_exact_divide(f, forms[h], &q)) {
                f = std::move(q);
                ++power[h];
            }
        }
        return f;
    };
    auto record_det = [&](std::vector<IntPolynomial> rest) {
        cert.det_unit = unit;
        cert.det_factors.clear();
        for (std::size_t h = 0; h < forms.size(); ++h)
            if (power[h] > 0) cert.det_factors.emplace_back(arr.forms[h], static_cast<unsigned>(power[h]));
        for (auto& f : rest) {
            if (f.is_constant()) {
                cert.det_unit *= Rational(f.constant_value());
            } else {
                cert.det_factors.emplace_back(detail::to_rational_poly(f), 1u);
            }
        }
        if (coxops::is_zero(cert.det_unit)) cert.det_factors.clear();
    };
    auto exact_powers = [&] {
        return std::all_of(power.begin(), power.end(), [&](std::int64_t p) { return p == t; });
    };

    for (auto& f : factors) {
        IntPolynomial r = strip(std::move(f));
        if (r.is_constant()) {
            unit *= Rational(r.constant_value());
        } else {
            leftover.push_back(std::move(r));
        }
    }

    const bool overshoot = std::any_of(power.begin(), power.end(), [&](std::int64_t p) { return p > t; });
    const bool small = core.rows() <= opt.expand_limit;

    if (core.rows() == 0 || small || !leftover.empty() || overshoot) {
        if (core.rows() > 0 && !small) {
            // Already decided negatively; only the determinant is missing.
            if (core.rows() > opt.expand_limit + 2) {
                cert.method = "peeled";
                cert.det_known = false;
                return cert;
            }
        }
        cert.method = core.rows() == 0 ? "peeled" : "expanded";
        if (core.rows() > 0) {
            IntPolynomial d = detail::dense_determinant(core, det_method::laplace);
            if (d.is_zero()) {
                cert.det_unit = 0;
                return cert;
            }
            IntPolynomial r = strip(std::move(d));
            if (r.is_constant()) {
                unit *= Rational(r.constant_value());
            } else {
                leftover.push_back(std::move(r));
            }
        }
        record_det(leftover);
        cert.is_basis = leftover.empty() && exact_powers() && !coxops::is_zero(cert.det_unit);
        if (cert.is_basis) cert.c = cert.det_unit;
        return cert;
    }

    // Large core: det(core) must equal c' * prod p_H^{t - power_H}.
    factored_target target;
    std::vector<Integer> pt = detail::generic_point(forms, nv);
    Integer t0 = 1;
    for (std::size_t h = 0; h < forms.size(); ++h) {
        std::int64_t need = t - power[h];
        if (need == 0) continue;
        target.factors.emplace_back(forms[h], static_cast<unsigned>(need));
        Integer v;
        mpz_pow_ui(v.get_mpz_t(), detail::evaluate(forms[h], pt).get_mpz_t(), static_cast<unsigned long>(need));
        t0 *= v;
    }
    cert.method = "modular";
    Integer d0 = detail::constant_determinant(core, pt);
    if (d0 == 0) {
        // The target does not vanish at pt, so det != c Q^t.
        cert.det_known = false;
        return cert;
    }
    Rational ratio(d0, t0);
    ratio.canonicalize();
    auto report = determinant_identity(core, Integer(ratio.get_den()), Integer(ratio.get_num()), target,
                                       opt.max_grid_points);
    cert.grid_points = report.points;
    cert.grid_primes = report.primes;
    if (report.result == identity_report::status::identical) {
        for (std::size_t h = 0; h < forms.size(); ++h) power[h] = t;
        unit *= ratio;
        record_det({});
        cert.is_basis = true;
        cert.c = cert.det_unit;
        return cert;
    }
    if (report.result == identity_report::status::different) {
        cert.det_known = false;
        return cert;
    }
    // Not applicable (non-homogeneous rows or oversized grid): expand.
    cert.method = "expanded";
    IntPolynomial d = detail::dense_determinant(core, det_method::laplace);
    IntPolynomial r = strip(std::move(d));
    if (r.is_zero()) {
        cert.det_unit = 0;
        return cert;
    }
    if (r.is_constant()) {
        unit *= Rational(r.constant_value());
    } else {
        leftover.push_back(std::move(r));
    }
    record_det(leftover);
    cert.is_basis = leftover.empty() && exact_powers();
    if (cert.is_basis) cert.c = cert.det_unit;
    return cert;
}

// Determinant criterion for a candidate basis of D^(m)(arr). Every operator
// must lie in D^(m)(arr) and be homogeneous.
inline Certificate saito_holm_certify(const std::vector<DiffOperator>& ops, const Arrangement& arr,
                                      const CertifyOptions& opt = {}) {
    if (ops.empty()) throw invalid_argument("no operators to certify");
    for (const auto& op : ops) {
        if (op.l() != arr.l) throw dimension_mismatch("operator and arrangement differ in dimension");
        if (!op.is_homogeneous()) throw non_homogeneous("operator is not homogeneous");
    }
    PolyMatrix mat = coefficient_matrix(ops);
    if (opt.check_membership) {
        std::vector<char> ok(ops.size() * arr.forms.size(), 1);
        parallel_for(ok.size(), [&](std::size_t k) {
            ok[k] = member_of_form(ops[k / arr.forms.size()], arr.forms[k % arr.forms.size()]) ? 1 : 0;
        });
        for (std::size_t k = 0; k < ok.size(); ++k)
            if (!ok[k])
                throw non_member("operator " + std::to_string(k / arr.forms.size() + 1) +
                                 " is not in D^(m) of the hyperplane " +
                                 std::to_string(k % arr.forms.size() + 1));
    }
    return certify_matrix(mat, arr, t_m_exponent(arr, ops.front().m()), opt);
}

} // namespace coxops
