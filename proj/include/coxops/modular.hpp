#pragma once

#include <gmp.h>

#include <algorithm>
#include <array>
#include <cstddef>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "coxops/errors.hpp"
#include "coxops/parallel.hpp"
#include "coxops/poly_matrix.hpp"

namespace coxops {

namespace modular {

using u64 = std::uint64_t;
using u128 = unsigned __int128;

// Montgomery arithmetic modulo an odd p < 2^62, R = 2^64.
class Field {
public:
    explicit Field(u64 p) : p_(p) {
        if (p % 2 == 0 || p >= (u64{1} << 62)) throw invalid_argument("modulus must be odd and below 2^62");
        u64 inv = p;
        for (int i = 0; i < 6; ++i) inv *= 2 - p * inv;
        neg_inv_ = ~inv + 1;
        u128 r = (u128{1} << 64) % p;
        r2_ = static_cast<u64>((r * r) % p);
    }

    u64 modulus() const { return p_; }

    u64 reduce(u128 t) const {
        u64 m = static_cast<u64>(t) * neg_inv_;
        u64 r = static_cast<u64>((t + static_cast<u128>(m) * p_) >> 64);
        return r >= p_ ? r - p_ : r;
    }
    u64 mul(u64 a, u64 b) const { return reduce(static_cast<u128>(a) * b); }
    // a*b + c*d with a single reduction; the sum stays below p * 2^64.
    u64 mul_add(u64 a, u64 b, u64 c, u64 d) const {
        return reduce(static_cast<u128>(a) * b + static_cast<u128>(c) * d);
    }
    u64 add(u64 a, u64 b) const {
        u64 s = a + b;
        return s >= p_ ? s - p_ : s;
    }
    u64 sub(u64 a, u64 b) const { return a >= b ? a - b : a + p_ - b; }

    u64 from_u64(u64 v) const { return mul(v % p_, r2_); }
    u64 from_integer(const Integer& v) const {
        u64 r = static_cast<u64>(mpz_fdiv_ui(v.get_mpz_t(), static_cast<unsigned long>(p_)));
        return from_u64(r);
    }
    u64 one() const { return from_u64(1); }

    u64 pow(u64 a, unsigned e) const {
        u64 r = one();
        while (e) {
            if (e & 1u) r = mul(r, a);
            a = mul(a, a);
            e >>= 1;
        }
        return r;
    }

private:
    u64 p_;
    u64 neg_inv_;
    u64 r2_;
};

// Determinant times a known nonzero scale, without inversions:
// returns (d, s) with d == det(a) * s. The matrix is overwritten.
inline std::pair<u64, u64> det_scaled(const Field& f, std::vector<u64>& a, int n) {
    u64 scale = f.one();
    bool negate = false;
    auto at = [&](int r, int c) -> u64& { return a[static_cast<std::size_t>(r * n + c)]; };
    for (int k = 0; k < n; ++k) {
        int piv = -1;
        for (int r = k; r < n; ++r)
            if (at(r, k) != 0) {
                piv = r;
                break;
            }
        if (piv < 0) return {0, scale};
        if (piv != k) {
            for (int c = k; c < n; ++c) std::swap(at(k, c), at(piv, c));
            negate = !negate;
        }
        const u64 p = at(k, k);
        for (int r = k + 1; r < n; ++r) {
            const u64 q = at(r, k);
            if (q == 0) continue;
            const u64 nq = f.modulus() - q;
            for (int c = k + 1; c < n; ++c) at(r, c) = f.mul_add(p, at(r, c), nq, at(k, c));
            scale = f.mul(scale, p);
        }
    }
    u64 d = f.one();
    for (int k = 0; k < n; ++k) d = f.mul(d, at(k, k));
    if (negate && d != 0) d = f.modulus() - d;
    return {d, scale};
}

static_assert(sizeof(unsigned long) == 8, "64-bit unsigned long expected");

// 62-bit primes, generated deterministically.
inline std::vector<u64> primes(std::size_t count) {
    std::vector<u64> out;
    Integer p = Integer(1) << 61;
    p += Integer(1) << 60;
    while (out.size() < count) {
        mpz_nextprime(p.get_mpz_t(), p.get_mpz_t());
        out.push_back(static_cast<u64>(p.get_ui()));
    }
    return out;
}

inline Integer one_norm(const IntPolynomial& p) {
    Integer s = 0;
    for (const auto& t : p.terms()) s += abs(t.coef);
    return s;
}

} // namespace modular

// A product c * f_1^{e_1} * ... * f_k^{e_k} of integer polynomials.
struct factored_target {
    std::vector<std::pair<IntPolynomial, unsigned>> factors;
};

struct identity_report {
    enum class status { identical, different, not_applicable };
    status result = status::not_applicable;
    std::string reason;           // why the test did not apply
    std::uint64_t points = 0;     // grid points per prime
    std::size_t primes = 0;

    bool identical() const { return result == status::identical; }
};

namespace detail {

// Largest sum_r w[r][pi(r)] over permutations pi avoiding entries < 0, or 0
// when no such permutation exists. Exact bitmask DP up to 20 rows; above
// that, the smaller of the row-maximum and column-maximum sums.
inline long max_assignment(const std::vector<int>& w, int n) {
    auto at = [&](int r, int c) { return w[static_cast<std::size_t>(r * n + c)]; };
    if (n > 20) {
        long by_rows = 0, by_cols = 0;
        for (int r = 0; r < n; ++r) {
            int mx = 0;
            for (int c = 0; c < n; ++c) mx = std::max(mx, at(r, c));
            by_rows += mx;
        }
        for (int c = 0; c < n; ++c) {
            int mx = 0;
            for (int r = 0; r < n; ++r) mx = std::max(mx, at(r, c));
            by_cols += mx;
        }
        return std::min(by_rows, by_cols);
    }
    const std::size_t full = std::size_t{1} << n;
    std::vector<long> best(full, -1);
    best[0] = 0;
    for (std::size_t mask = 0; mask < full; ++mask) {
        if (best[mask] < 0) continue;
        const int r = __builtin_popcountll(mask);
        if (r == n) continue;
        for (int c = 0; c < n; ++c) {
            if ((mask >> c) & 1U || at(r, c) < 0) continue;
            std::size_t next = mask | (std::size_t{1} << c);
            best[next] = std::max(best[next], best[mask] + at(r, c));
        }
    }
    return std::max(best[full - 1], 0L);
}

// Monomial terms of one polynomial reduced mod p: coefficient plus the
// exponents of the grid variables, split into outer variables and the inner
// (fastest-moving) one.
struct mod_poly {
    struct term {
        modular::u64 coef;
        std::array<std::int16_t, kMaxVars> e;
    };
    std::vector<term> terms;
    int inner_degree = 0;
};

inline mod_poly reduce_poly(const modular::Field& f, const IntPolynomial& p, int inner) {
    mod_poly out;
    for (const auto& t : p.terms()) {
        mod_poly::term m{f.from_integer(t.coef), {}};
        for (int v = 0; v < kMaxVars; ++v) m.e[static_cast<std::size_t>(v)] = static_cast<std::int16_t>(t.exp[v]);
        if (inner >= 0) out.inner_degree = std::max(out.inner_degree, t.exp[inner]);
        out.terms.push_back(m);
    }
    return out;
}

} // namespace detail

// Decides a * det(k) == b * prod f_i^{e_i} exactly, for an integer polynomial
// matrix k whose rows are homogeneous, by evaluation on a product grid modulo
// enough primes:
//  * with both sides homogeneous of the same degree, it suffices to test the
//    dehomogenization at x_dehom = 1;
//  * a polynomial over F_p vanishing on S_1 x ... x S_n with |S_i| larger than
//    its degree in x_i is zero;
//  * an integer polynomial that is zero modulo primes whose product exceeds
//    its coefficient bound is zero.
// Reports not_applicable when a row is not homogeneous or the grid would
// exceed max_points; callers then fall back to expansion.
inline identity_report determinant_identity(const IntPolyMatrix& k, const Integer& a, const Integer& b,
                                            const factored_target& target,
                                            std::uint64_t max_points = 400'000'000ULL) {
    using namespace modular;
    if (!k.is_square()) throw invalid_argument("determinant identity needs a square matrix");
    const int n = k.rows();
    const int nv = k.nvars();
    if (a == 0) throw invalid_argument("determinant identity: a must be nonzero");
    identity_report report;
    auto skip = [&](std::string why) {
        report.result = identity_report::status::not_applicable;
        report.reason = std::move(why);
        return report;
    };

    // Degrees.
    int det_degree = 0;
    for (int r = 0; r < n; ++r) {
        int d = -1;
        for (int c = 0; c < n; ++c) {
            const auto& e = k(r, c);
            if (e.is_zero()) continue;
            if (!e.is_homogeneous() || (d >= 0 && e.degree() != d)) return skip("row " + std::to_string(r) + " is not homogeneous");
            d = e.degree();
        }
        if (d < 0) d = 0;
        det_degree += d;
    }
    int target_degree = 0;
    for (const auto& [f, e] : target.factors) {
        if (f.is_zero()) throw invalid_argument("determinant identity: zero target factor");
        if (!f.is_homogeneous()) return skip("target factor is not homogeneous");
        target_degree += f.degree() * static_cast<int>(e);
    }
    if (b != 0 && det_degree != target_degree) {
        // a*det(k) is zero or homogeneous of another degree: never equal.
        report.result = identity_report::status::different;
        return report;
    }

    // Per-variable degree bounds on both sides. deg_v det(k) is at most the
    // heaviest permutation of the entry degrees in v; that assignment problem
    // is solved exactly for small n and bounded by row/column maxima beyond.
    std::vector<int> bound(static_cast<std::size_t>(nv), 0);
    for (int v = 0; v < nv; ++v) {
        std::vector<int> deg(static_cast<std::size_t>(n) * static_cast<std::size_t>(n), -1);
        for (int r = 0; r < n; ++r)
            for (int c = 0; c < n; ++c)
                if (!k(r, c).is_zero()) deg[static_cast<std::size_t>(r * n + c)] = k(r, c).degree_in(v);
        long t = 0;
        for (const auto& [f, e] : target.factors) t += static_cast<long>(f.degree_in(v)) * e;
        bound[static_cast<std::size_t>(v)] = static_cast<int>(std::max(detail::max_assignment(deg, n), t));
    }

    // Dehomogenize at the last variable; the inner loop runs over the
    // variable with the largest grid.
    const int dehom = nv - 1;
    std::vector<int> grid_vars;
    for (int v = 0; v < nv; ++v)
        if (v != dehom) grid_vars.push_back(v);
    int inner = -1;
    for (int v : grid_vars)
        if (inner < 0 || bound[static_cast<std::size_t>(v)] > bound[static_cast<std::size_t>(inner)]) inner = v;
    std::vector<int> outer;
    for (int v : grid_vars)
        if (v != inner) outer.push_back(v);

    long double total = 1;
    for (int v : grid_vars) total *= static_cast<long double>(bound[static_cast<std::size_t>(v)] + 1);
    if (total > static_cast<long double>(max_points)) return skip("evaluation grid too large");

    // Coefficient bound on a*det(k) - b*target. Every coefficient of a
    // polynomial is bounded by its maximum modulus on the unit torus, where
    // |k_rc| <= |k_rc|_1; Hadamard's inequality then bounds |det k| by the
    // product of the row (or column) 2-norms.
    Integer rows_sq = 1, cols_sq = 1;
    for (int r = 0; r < n; ++r) {
        Integer s = 0;
        for (int c = 0; c < n; ++c) {
            Integer w = one_norm(k(r, c));
            s += w * w;
        }
        rows_sq *= s;
    }
    for (int c = 0; c < n; ++c) {
        Integer s = 0;
        for (int r = 0; r < n; ++r) {
            Integer w = one_norm(k(r, c));
            s += w * w;
        }
        cols_sq *= s;
    }
    Integer det_bound;
    mpz_sqrt(det_bound.get_mpz_t(), Integer(rows_sq < cols_sq ? rows_sq : cols_sq).get_mpz_t());
    det_bound += 1;
    Integer target_bound = 1;
    for (const auto& [f, e] : target.factors) {
        Integer s;
        mpz_pow_ui(s.get_mpz_t(), one_norm(f).get_mpz_t(), e);
        target_bound *= s;
    }
    Integer coeff_bound = abs(a) * det_bound + abs(b) * target_bound;

    std::size_t nprimes = 1;
    for (;;) {
        Integer prod = 1;
        for (u64 p : primes(nprimes)) prod *= Integer(static_cast<unsigned long>(p));
        if (prod > coeff_bound) break;
        ++nprimes;
    }

    report.points = static_cast<std::uint64_t>(total);
    report.primes = nprimes;

    std::size_t outer_points = 1;
    for (int v : outer) outer_points *= static_cast<std::size_t>(bound[static_cast<std::size_t>(v)] + 1);
    const int inner_size = inner >= 0 ? bound[static_cast<std::size_t>(inner)] + 1 : 1;

    for (u64 prime : primes(nprimes)) {
        const Field f(prime);
        const u64 fa = f.from_integer(a);
        const u64 fb = f.from_integer(b);
        std::vector<detail::mod_poly> entries;
        entries.reserve(static_cast<std::size_t>(n) * static_cast<std::size_t>(n));
        for (int r = 0; r < n; ++r)
            for (int c = 0; c < n; ++c) entries.push_back(detail::reduce_poly(f, k(r, c), inner));
        std::vector<detail::mod_poly> tfac;
        for (const auto& [poly, e] : target.factors) tfac.push_back(detail::reduce_poly(f, poly, inner));

        std::array<int, kMaxVars> top{};
        for (int v = 0; v < nv; ++v) {
            top[static_cast<std::size_t>(v)] = bound[static_cast<std::size_t>(v)];
            for (const auto& e : entries)
                for (const auto& t : e.terms)
                    top[static_cast<std::size_t>(v)] = std::max<int>(top[static_cast<std::size_t>(v)], t.e[static_cast<std::size_t>(v)]);
            for (const auto& e : tfac)
                for (const auto& t : e.terms)
                    top[static_cast<std::size_t>(v)] = std::max<int>(top[static_cast<std::size_t>(v)], t.e[static_cast<std::size_t>(v)]);
        }

        std::vector<char> mismatch(outer_points, 0);
        parallel_for(outer_points, [&](std::size_t idx) {
            // Outer coordinates of this grid slice.
            std::array<u64, kMaxVars> value{};
            std::size_t rest = idx;
            for (int v : outer) {
                std::size_t size = static_cast<std::size_t>(bound[static_cast<std::size_t>(v)] + 1);
                value[static_cast<std::size_t>(v)] = f.from_u64(rest % size);
                rest /= size;
            }
            value[static_cast<std::size_t>(dehom)] = f.one();
            std::array<std::vector<u64>, kMaxVars> powers;
            for (int v = 0; v < nv; ++v) {
                if (v == inner) continue;
                auto& pw = powers[static_cast<std::size_t>(v)];
                pw.assign(static_cast<std::size_t>(top[static_cast<std::size_t>(v)] + 1), 0);
                pw[0] = f.one();
                for (int j = 1; j <= top[static_cast<std::size_t>(v)]; ++j)
                    pw[static_cast<std::size_t>(j)] = f.mul(pw[static_cast<std::size_t>(j - 1)], value[static_cast<std::size_t>(v)]);
            }
            // Collapse every polynomial to a univariate one in the inner
            // variable; coefficients are stored flat with per-polynomial offsets.
            auto collapse = [&](const std::vector<detail::mod_poly>& polys, std::vector<u64>& flat,
                                std::vector<std::size_t>& offset) {
                offset.resize(polys.size() + 1);
                offset[0] = 0;
                for (std::size_t i = 0; i < polys.size(); ++i)
                    offset[i + 1] = offset[i] + static_cast<std::size_t>(polys[i].inner_degree) + 1;
                flat.assign(offset.back(), 0);
                for (std::size_t i = 0; i < polys.size(); ++i) {
                    for (const auto& t : polys[i].terms) {
                        u64 c = t.coef;
                        for (int v = 0; v < nv; ++v) {
                            const int e = t.e[static_cast<std::size_t>(v)];
                            if (v == inner || e == 0) continue;
                            c = f.mul(c, powers[static_cast<std::size_t>(v)][static_cast<std::size_t>(e)]);
                        }
                        std::size_t d = inner >= 0 ? static_cast<std::size_t>(t.e[static_cast<std::size_t>(inner)]) : 0;
                        u64& slot = flat[offset[i] + d];
                        slot = f.add(slot, c);
                    }
                }
            };
            std::vector<u64> uni, tuni;
            std::vector<std::size_t> uoff, toff;
            collapse(entries, uni, uoff);
            collapse(tfac, tuni, toff);
            auto horner = [&](const std::vector<u64>& flat, const std::vector<std::size_t>& off, std::size_t i, u64 z) {
                u64 acc = 0;
                for (std::size_t j = off[i + 1]; j-- > off[i];) acc = f.add(f.mul(acc, z), flat[j]);
                return acc;
            };
            std::vector<u64> work(static_cast<std::size_t>(n) * static_cast<std::size_t>(n));
            for (int zi = 0; zi < inner_size; ++zi) {
                const u64 z = f.from_u64(static_cast<u64>(zi));
                for (std::size_t e = 0; e < entries.size(); ++e) work[e] = horner(uni, uoff, e, z);
                auto [d, s] = det_scaled(f, work, n);
                u64 t = fb;
                for (std::size_t j = 0; j < tfac.size(); ++j)
                    t = f.mul(t, f.pow(horner(tuni, toff, j, z), target.factors[j].second));
                if (f.mul(fa, d) != f.mul(t, s)) {
                    mismatch[idx] = 1;
                    return;
                }
            }
        });
        if (std::any_of(mismatch.begin(), mismatch.end(), [](char c) { return c != 0; })) {
            report.result = identity_report::status::different;
            return report;
        }
    }
    report.result = identity_report::status::identical;
    return report;
}

} // namespace coxops
