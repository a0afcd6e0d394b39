#pragma once

#include <algorithm>
#include <array>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

#include "coxops/errors.hpp"

namespace coxops {

// Upper bound on the number of ambient variables. Exponent vectors are stored
// inline so that million-term polynomials do not allocate per term.
inline constexpr int kMaxVars = 12;

// Exponent vector x^e. Entries beyond the owning polynomial's variable count
// are always zero, so comparisons never need to know that count.
class Monomial {
public:
    using value_type = std::int16_t;

    constexpr Monomial() = default;

    Monomial(std::span<const int> exps) {
        if (exps.size() > static_cast<std::size_t>(kMaxVars))
            throw invalid_argument("too many variables (max " + std::to_string(kMaxVars) + ")");
        for (std::size_t i = 0; i < exps.size(); ++i) set(static_cast<int>(i), exps[i]);
    }

    Monomial(std::initializer_list<int> exps)
        : Monomial(std::span<const int>(exps.begin(), exps.size())) {}

    static Monomial unit(int var, int power = 1) {
        Monomial m;
        m.set(var, power);
        return m;
    }

    int operator[](int i) const { return e_[static_cast<std::size_t>(i)]; }

    void set(int i, int v) {
        if (i < 0 || i >= kMaxVars) throw invalid_argument("variable index out of range");
        if (v > INT16_MAX || v < INT16_MIN) throw invalid_argument("exponent out of range");
        e_[static_cast<std::size_t>(i)] = static_cast<value_type>(v);
    }

    int total_degree() const {
        int d = 0;
        for (auto v : e_) d += v;
        return d;
    }

    bool is_nonnegative() const {
        return std::all_of(e_.begin(), e_.end(), [](value_type v) { return v >= 0; });
    }

    bool is_one() const {
        return std::all_of(e_.begin(), e_.end(), [](value_type v) { return v == 0; });
    }

    // Highest index with a nonzero exponent, or -1.
    int support_end() const {
        for (int i = kMaxVars - 1; i >= 0; --i)
            if (e_[static_cast<std::size_t>(i)] != 0) return i;
        return -1;
    }

    // Componentwise: does *this divide other in the polynomial sense.
    bool divides(const Monomial& other) const {
        for (std::size_t i = 0; i < e_.size(); ++i)
            if (e_[i] > other.e_[i]) return false;
        return true;
    }

    std::vector<int> to_vector(int nvars) const {
        std::vector<int> v(static_cast<std::size_t>(nvars));
        for (int i = 0; i < nvars; ++i) v[static_cast<std::size_t>(i)] = e_[static_cast<std::size_t>(i)];
        return v;
    }

    friend Monomial operator+(const Monomial& a, const Monomial& b) {
        Monomial r;
        for (std::size_t i = 0; i < a.e_.size(); ++i) {
            int s = int{a.e_[i]} + int{b.e_[i]};
            if (s > INT16_MAX || s < INT16_MIN) throw invalid_argument("exponent overflow");
            r.e_[i] = static_cast<value_type>(s);
        }
        return r;
    }

    friend Monomial operator-(const Monomial& a, const Monomial& b) {
        Monomial r;
        for (std::size_t i = 0; i < a.e_.size(); ++i) {
            int s = int{a.e_[i]} - int{b.e_[i]};
            if (s > INT16_MAX || s < INT16_MIN) throw invalid_argument("exponent overflow");
            r.e_[i] = static_cast<value_type>(s);
        }
        return r;
    }

    Monomial scaled(int factor) const {
        Monomial r;
        for (std::size_t i = 0; i < e_.size(); ++i) r.set(static_cast<int>(i), int{e_[i]} * factor);
        return r;
    }

    friend bool operator==(const Monomial&, const Monomial&) = default;
    // Lexicographic on exponent vectors: x1 > x2 > ... ; x1^2 > x1*x2.
    friend auto operator<=>(const Monomial& a, const Monomial& b) { return a.e_ <=> b.e_; }

private:
    std::array<value_type, kMaxVars> e_{};
};

} // namespace coxops
