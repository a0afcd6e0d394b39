#pragma once

#include <algorithm>
#include <bit>
#include <cstddef>
#include <cstdint>
#include <numeric>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "coxops/combinatorics.hpp"
#include "coxops/errors.hpp"
#include "coxops/parallel.hpp"
#include "coxops/polynomial.hpp"

namespace coxops {

// Dense row-major matrix of polynomials sharing one ambient dimension.
template <class P>
class basic_matrix {
public:
    using value_type = P;

    basic_matrix() = default;

    basic_matrix(int rows, int cols, int nvars) : rows_(rows), cols_(cols), nvars_(nvars) {
        if (rows < 0 || cols < 0) throw invalid_argument("matrix dimensions must be nonnegative");
        entries_.assign(static_cast<std::size_t>(rows) * static_cast<std::size_t>(cols), P(nvars));
    }

    static basic_matrix identity(int n, int nvars) {
        basic_matrix m(n, n, nvars);
        for (int i = 0; i < n; ++i) m(i, i) = P::constant(nvars, typename P::coeff_type(1));
        return m;
    }

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    int nvars() const { return nvars_; }
    bool is_square() const { return rows_ == cols_; }

    // Zero-based access.
    P& operator()(int r, int c) { return entries_[index(r, c)]; }
    const P& operator()(int r, int c) const { return entries_[index(r, c)]; }

    P& at(int r, int c) {
        check(r, c);
        return (*this)(r, c);
    }
    const P& at(int r, int c) const {
        check(r, c);
        return (*this)(r, c);
    }

    void set(int r, int c, P value) {
        check(r, c);
        if (value.nvars() != nvars_) throw dimension_mismatch("matrix entry has the wrong ambient dimension");
        (*this)(r, c) = std::move(value);
    }

    void swap_rows(int a, int b) {
        if (a == b) return;
        for (int c = 0; c < cols_; ++c) std::swap((*this)(a, c), (*this)(b, c));
    }

    void swap_cols(int a, int b) {
        if (a == b) return;
        for (int r = 0; r < rows_; ++r) std::swap((*this)(r, a), (*this)(r, b));
    }

    friend basic_matrix operator*(const basic_matrix& a, const basic_matrix& b) {
        if (a.cols_ != b.rows_ || a.nvars_ != b.nvars_) throw dimension_mismatch("matrix product shape mismatch");
        basic_matrix out(a.rows_, b.cols_, a.nvars_);
        for (int i = 0; i < a.rows_; ++i)
            for (int j = 0; j < b.cols_; ++j) {
                P acc(a.nvars_);
                for (int k = 0; k < a.cols_; ++k) acc += a(i, k) * b(k, j);
                out(i, j) = std::move(acc);
            }
        return out;
    }

    friend bool operator==(const basic_matrix&, const basic_matrix&) = default;

private:
    std::size_t index(int r, int c) const {
        return static_cast<std::size_t>(r) * static_cast<std::size_t>(cols_) + static_cast<std::size_t>(c);
    }
    void check(int r, int c) const {
        if (r < 0 || r >= rows_ || c < 0 || c >= cols_) throw invalid_argument("matrix index out of range");
    }

    int rows_ = 0;
    int cols_ = 0;
    int nvars_ = 0;
    std::vector<P> entries_;
};

using PolyMatrix = basic_matrix<Polynomial>;
using IntPolyMatrix = basic_matrix<IntPolynomial>;

// Strictly increasing 1-based row or column selection 1 <= mu_1 < ... < mu_m.
class Selector {
public:
    Selector() = default;
    explicit Selector(std::vector<int> indices) : idx_(std::move(indices)) {
        for (std::size_t i = 0; i < idx_.size(); ++i) {
            if (idx_[i] < 1) throw invalid_argument("selector indices are 1-based");
            if (i > 0 && idx_[i] <= idx_[i - 1]) throw invalid_argument("selector must be strictly increasing");
        }
    }

    std::size_t size() const { return idx_.size(); }
    int operator[](std::size_t i) const { return idx_[i]; }
    const std::vector<int>& indices() const { return idx_; }

    friend bool operator==(const Selector&, const Selector&) = default;
    friend auto operator<=>(const Selector&, const Selector&) = default;

private:
    std::vector<int> idx_;
};

// A_{mu,nu} = (a_{mu_i, nu_j}).
template <class P>
basic_matrix<P> submatrix(const basic_matrix<P>& a, const Selector& mu, const Selector& nu) {
    if (mu.size() > 0 && mu[mu.size() - 1] > a.rows()) throw invalid_argument("row selector out of range");
    if (nu.size() > 0 && nu[nu.size() - 1] > a.cols()) throw invalid_argument("column selector out of range");
    basic_matrix<P> out(static_cast<int>(mu.size()), static_cast<int>(nu.size()), a.nvars());
    for (std::size_t i = 0; i < mu.size(); ++i)
        for (std::size_t j = 0; j < nu.size(); ++j)
            out(static_cast<int>(i), static_cast<int>(j)) = a(mu[i] - 1, nu[j] - 1);
    return out;
}

enum class det_method { automatic, laplace, bareiss };

// det = unit * prod(factors). Factors peeled off by sparse-row expansion are
// kept separate from the dense core so that callers can compare against a
// factored target without expanding everything.
template <class P>
struct factored_determinant {
    Rational unit{1};
    std::vector<P> factors;

    bool is_zero() const {
        return is_zero_unit() || std::any_of(factors.begin(), factors.end(), [](const P& f) { return f.is_zero(); });
    }

    template <class Out = Polynomial>
    Out expand(int nvars) const {
        Out r = Out::constant(nvars, typename Out::coeff_type(1));
        if (is_zero()) return Out(nvars);
        // Multiply small factors first.
        std::vector<const P*> order;
        for (const auto& f : factors) order.push_back(&f);
        std::sort(order.begin(), order.end(), [](const P* a, const P* b) { return a->size() < b->size(); });
        for (const P* f : order) r *= convert<Out>(*f);
        return r * typename Out::coeff_type(unit);
    }

private:
    bool is_zero_unit() const { return coxops::is_zero(unit); }

    template <class Out>
    static Out convert(const P& f) {
        if constexpr (std::is_same_v<Out, P>) {
            return f;
        } else {
            return map_coefficients<typename Out::coeff_type>(f, [](const auto& c) {
                return typename Out::coeff_type(c);
            });
        }
    }
};

namespace detail {

template <class C>
basic_polynomial<C, false> one_like(int nvars) {
    return basic_polynomial<C, false>::constant(nvars, C(1));
}

// Fraction-free Gaussian elimination. Each division by the previous pivot is
// exact over an integral domain. Pivot: the nonzero candidate with the fewest
// terms, which keeps intermediate minors small.
template <class P>
P bareiss(basic_matrix<P> m) {
    const int n = m.rows();
    const int nv = m.nvars();
    if (n == 0) return P::constant(nv, typename P::coeff_type(1));
    int sign = 1;
    P prev = P::constant(nv, typename P::coeff_type(1));
    for (int k = 0; k < n - 1; ++k) {
        int best = -1;
        for (int i = k; i < n; ++i)
            if (!m(i, k).is_zero() && (best < 0 || m(i, k).size() < m(best, k).size())) best = i;
        if (best < 0) return P(nv);
        if (best != k) {
            m.swap_rows(best, k);
            sign = -sign;
        }
        for (int i = k + 1; i < n; ++i) {
            for (int j = k + 1; j < n; ++j) {
                P num = m(k, k) * m(i, j) - m(i, k) * m(k, j);
                m(i, j) = exact_divide(num, prev);
            }
            m(i, k) = P(nv);
        }
        prev = m(k, k);
    }
    P d = m(n - 1, n - 1);
    return sign < 0 ? -d : d;
}

// Laplace expansion along rows with memoized minors: the minors over the
// first k rows are indexed by their column subsets and built from the minors
// over the first k-1 rows. Every step multiplies a matrix entry (few terms)
// by a stored minor, which is cheap compared with the big-by-big products
// and divisions of elimination. Rows with fewer terms are expanded first.
template <class P>
P laplace(const basic_matrix<P>& m) {
    const int n = m.rows();
    const int nv = m.nvars();
    if (n == 0) return P::constant(nv, typename P::coeff_type(1));
    if (n > 30) throw invalid_argument("laplace expansion limited to 30 rows");

    std::vector<int> order(static_cast<std::size_t>(n));
    std::iota(order.begin(), order.end(), 0);
    // Low-degree rows first keeps the early minors small; ties by term count.
    auto weight = [&](int r) {
        int deg = 0;
        std::size_t terms = 0;
        for (int c = 0; c < n; ++c) {
            if (m(r, c).is_zero()) continue;
            deg = std::max(deg, m(r, c).degree());
            terms += m(r, c).size();
        }
        return std::pair<int, std::size_t>(deg, terms);
    };
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return weight(a) < weight(b); });
    const int order_sign = permutation_sign(order);

    using mask_t = std::uint32_t;
    std::unordered_map<mask_t, P> prev;
    prev.emplace(mask_t{0}, P::constant(nv, typename P::coeff_type(1)));

    for (int k = 1; k <= n; ++k) {
        const int row = order[static_cast<std::size_t>(k - 1)];
        // Candidate subsets: every stored (k-1)-subset plus one column.
        std::vector<mask_t> subsets;
        {
            std::vector<mask_t> all;
            for (const auto& [mask, minor] : prev)
                for (int c = 0; c < n; ++c)
                    if (!(mask >> c & 1u) && !m(row, c).is_zero()) all.push_back(mask | (mask_t{1} << c));
            std::sort(all.begin(), all.end());
            all.erase(std::unique(all.begin(), all.end()), all.end());
            subsets = std::move(all);
        }
        std::vector<P> values(subsets.size());
        parallel_for(subsets.size(), [&](std::size_t s) {
            const mask_t mask = subsets[s];
            std::vector<product_term<P>> parts;
            int idx = 0;
            for (int c = 0; c < n; ++c) {
                if (!(mask >> c & 1u)) continue;
                const P& entry = m(row, c);
                if (!entry.is_zero()) {
                    auto it = prev.find(mask & ~(mask_t{1} << c));
                    if (it != prev.end()) {
                        int sgn = ((k - 1 + idx) % 2 == 0) ? 1 : -1;
                        parts.push_back(product_term<P>{&entry, &it->second, sgn});
                    }
                }
                ++idx;
            }
            values[s] = sum_of_products(parts, nv);
        });
        std::unordered_map<mask_t, P> next;
        next.reserve(subsets.size());
        for (std::size_t s = 0; s < subsets.size(); ++s)
            if (!values[s].is_zero()) next.emplace(subsets[s], std::move(values[s]));
        prev = std::move(next);
        if (prev.empty()) return P(nv);
    }
    P d = std::move(prev.begin()->second);
    return order_sign < 0 ? -d : d;
}

// Expand along rows and columns holding a single nonzero entry until none
// remain; those entries become separate factors. Returns the remaining core
// and the accumulated sign through the out-parameters.
template <class P>
basic_matrix<P> peel_sparse_lines(basic_matrix<P> m, std::vector<P>& factors, int& sign, bool& zero) {
    zero = false;
    for (;;) {
        const int n = m.rows();
        if (n == 0) return m;
        int hit_r = -1, hit_c = -1;
        for (int r = 0; r < n && hit_r < 0; ++r) {
            int count = 0, where = -1;
            for (int c = 0; c < n; ++c)
                if (!m(r, c).is_zero()) {
                    ++count;
                    where = c;
                }
            if (count == 0) {
                zero = true;
                return m;
            }
            if (count == 1) {
                hit_r = r;
                hit_c = where;
            }
        }
        for (int c = 0; c < n && hit_r < 0; ++c) {
            int count = 0, where = -1;
            for (int r = 0; r < n; ++r)
                if (!m(r, c).is_zero()) {
                    ++count;
                    where = r;
                }
            if (count == 0) {
                zero = true;
                return m;
            }
            if (count == 1) {
                hit_r = where;
                hit_c = c;
            }
        }
        if (hit_r < 0) return m;
        factors.push_back(m(hit_r, hit_c));
        if ((hit_r + hit_c) % 2 != 0) sign = -sign;
        basic_matrix<P> smaller(n - 1, n - 1, m.nvars());
        for (int r = 0, rr = 0; r < n; ++r) {
            if (r == hit_r) continue;
            for (int c = 0, cc = 0; c < n; ++c) {
                if (c == hit_c) continue;
                smaller(rr, cc) = std::move(m(r, c));
                ++cc;
            }
            ++rr;
        }
        m = std::move(smaller);
    }
}

template <class P>
P dense_determinant(const basic_matrix<P>& core, det_method method) {
    if (method == det_method::bareiss) return bareiss(core);
    if (method == det_method::laplace) return laplace(core);
    bool constant = true;
    for (int r = 0; r < core.rows() && constant; ++r)
        for (int c = 0; c < core.cols() && constant; ++c) constant = core(r, c).is_constant() || core(r, c).is_zero();
    if (constant) return bareiss(core);
    return core.rows() <= 22 ? laplace(core) : bareiss(core);
}

// Integer-coefficient matrix with each row scaled by the lcm of its
// denominators; returns the product of those scalings.
inline Integer clear_row_denominators(const PolyMatrix& a, IntPolyMatrix& out) {
    out = IntPolyMatrix(a.rows(), a.cols(), a.nvars());
    Integer total = 1;
    for (int r = 0; r < a.rows(); ++r) {
        Integer d = 1;
        for (int c = 0; c < a.cols(); ++c) {
            Integer dc = common_denominator(a(r, c));
            mpz_lcm(d.get_mpz_t(), d.get_mpz_t(), dc.get_mpz_t());
        }
        total *= d;
        for (int c = 0; c < a.cols(); ++c) {
            out(r, c) = map_coefficients<Integer>(a(r, c), [&](const Rational& q) {
                Rational s = q * d;
                return Integer(s.get_num());
            });
        }
    }
    return total;
}

} // namespace detail

// Exact determinant in factored form. Rational matrices are computed over the
// integers after clearing row denominators.
inline factored_determinant<IntPolynomial> determinant_factored(const PolyMatrix& a,
                                                                det_method method = det_method::automatic) {
    if (!a.is_square()) throw invalid_argument("determinant of a non-square matrix");
    IntPolyMatrix im;
    Integer scale = detail::clear_row_denominators(a, im);
    factored_determinant<IntPolynomial> out;
    out.unit = Rational(Integer(1), scale);
    out.unit.canonicalize();
    int sign = 1;
    bool zero = false;
    IntPolyMatrix core = detail::peel_sparse_lines(std::move(im), out.factors, sign, zero);
    if (zero) {
        out.unit = 0;
        out.factors.clear();
        return out;
    }
    if (core.rows() > 0) out.factors.push_back(detail::dense_determinant(core, method));
    if (sign < 0) out.unit = -out.unit;
    // Fold constant factors into the unit.
    std::vector<IntPolynomial> kept;
    for (auto& f : out.factors) {
        if (f.is_zero()) {
            out.unit = 0;
            out.factors.clear();
            return out;
        }
        if (f.is_constant()) {
            out.unit *= Rational(f.constant_value());
        } else {
            kept.push_back(std::move(f));
        }
    }
    out.factors = std::move(kept);
    return out;
}

inline Polynomial determinant(const PolyMatrix& a, det_method method = det_method::automatic) {
    return determinant_factored(a, method).expand<Polynomial>(a.nvars());
}

inline IntPolynomial determinant(const IntPolyMatrix& a, det_method method = det_method::automatic) {
    if (!a.is_square()) throw invalid_argument("determinant of a non-square matrix");
    std::vector<IntPolynomial> factors;
    int sign = 1;
    bool zero = false;
    IntPolyMatrix core = detail::peel_sparse_lines(a, factors, sign, zero);
    if (zero) return IntPolynomial(a.nvars());
    if (core.rows() > 0) factors.push_back(detail::dense_determinant(core, method));
    IntPolynomial d = product(factors, a.nvars());
    return sign < 0 ? -d : d;
}

// m-th compound matrix: all m x m minors, rows and columns indexed by the
// selectors in increasing lexicographic order.
template <class P>
basic_matrix<P> compound_matrix(const basic_matrix<P>& a, int m) {
    if (!a.is_square()) throw invalid_argument("compound matrix of a non-square matrix");
    const int n = a.rows();
    if (m < 1 || m > n) throw invalid_argument("compound order must satisfy 1 <= m <= size");
    auto sel = combinations(n, m);
    const int big = static_cast<int>(sel.size());
    basic_matrix<P> out(big, big, a.nvars());
    parallel_for(static_cast<std::size_t>(big) * static_cast<std::size_t>(big), [&](std::size_t k) {
        int i = static_cast<int>(k / static_cast<std::size_t>(big));
        int j = static_cast<int>(k % static_cast<std::size_t>(big));
        auto minor = submatrix(a, Selector(sel[static_cast<std::size_t>(i)]), Selector(sel[static_cast<std::size_t>(j)]));
        out(i, j) = determinant(minor);
    });
    return out;
}

// det A^(m) == (det A)^binom(l-1, m-1), checked exactly.
template <class P>
bool verify_cauchy_sylvester(const basic_matrix<P>& a, int m) {
    if (!a.is_square()) throw invalid_argument("Cauchy-Sylvester check needs a square matrix");
    const int n = a.rows();
    auto lhs = determinant(compound_matrix(a, m));
    auto d = determinant(a);
    auto rhs = d.pow(static_cast<unsigned>(binomial_small(n - 1, m - 1)));
    return lhs == rhs;
}

} // namespace coxops
