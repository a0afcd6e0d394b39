#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include <gmpxx.h>

#include "coxops/errors.hpp"

namespace coxops {

// Exact integers and fractions are GMP's. mpq_class keeps values canonical
// (lowest terms, positive denominator) after every arithmetic operation.
using Integer = mpz_class;
using Rational = mpq_class;

inline bool is_zero(const Integer& v) { return sgn(v) == 0; }
inline bool is_zero(const Rational& v) { return sgn(v) == 0; }

inline bool is_one(const Integer& v) { return v == 1; }
inline bool is_one(const Rational& v) { return v == 1; }

// "p/q", denominator omitted when it is 1.
inline std::string to_string(const Rational& v) {
    if (v.get_den() == 1) return v.get_num().get_str();
    return v.get_num().get_str() + "/" + v.get_den().get_str();
}

inline std::string to_string(const Integer& v) { return v.get_str(); }

inline Rational parse_rational(std::string_view text) {
    std::string s(text);
    auto slash = s.find('/');
    auto valid_int = [](const std::string& part) {
        if (part.empty()) return false;
        std::size_t i = (part[0] == '-' || part[0] == '+') ? 1 : 0;
        if (i == part.size()) return false;
        for (; i < part.size(); ++i)
            if (part[i] < '0' || part[i] > '9') return false;
        return true;
    };
    auto strip_plus = [](std::string part) {
        if (!part.empty() && part[0] == '+') part.erase(0, 1);
        return part;
    };
    if (slash == std::string::npos) {
        if (!valid_int(s)) throw parse_error("malformed rational '" + s + "'");
        return Rational(Integer(strip_plus(s)));
    }
    std::string num = s.substr(0, slash);
    std::string den = s.substr(slash + 1);
    if (!valid_int(num) || !valid_int(den))
        throw parse_error("malformed rational '" + s + "'");
    Integer d(strip_plus(den));
    if (d == 0) throw parse_error("zero denominator in '" + s + "'");
    Rational r(Integer(strip_plus(num)), d);
    r.canonicalize();
    return r;
}

inline Integer factorial(unsigned n) {
    Integer r;
    mpz_fac_ui(r.get_mpz_t(), n);
    return r;
}

inline Integer binomial(unsigned long n, unsigned long k) {
    Integer r;
    mpz_bin_uiui(r.get_mpz_t(), n, k);
    return r;
}

// Small binomials used for sizes and exponents.
inline std::int64_t binomial_small(std::int64_t n, std::int64_t k) {
    if (k < 0 || n < 0 || k > n) return 0;
    return binomial(static_cast<unsigned long>(n), static_cast<unsigned long>(k)).get_si();
}

} // namespace coxops
