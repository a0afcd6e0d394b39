#pragma once

#include <json.hpp>

#include <string>
#include <vector>

#include "coxops/bases.hpp"
#include "coxops/diffop.hpp"
#include "coxops/errors.hpp"
#include "coxops/poly_matrix.hpp"
#include "coxops/polynomial.hpp"
#include "coxops/rational.hpp"

namespace coxops {

using json = nlohmann::json;

namespace detail {

template <class F>
auto json_guard(F&& f) -> decltype(f()) {
    try {
        return f();
    } catch (const json::exception& e) {
        throw parse_error(std::string("malformed JSON: ") + e.what());
    }
}

} // namespace detail

// {"vars": l, "terms": [{"exp": [e1, ..., el], "coef": "p/q"}]}
template <bool L>
json to_json(const basic_polynomial<Rational, L>& p) {
    json terms = json::array();
    for (const auto& t : p.terms()) terms.push_back({{"exp", t.exp.to_vector(p.nvars())}, {"coef", to_string(t.coef)}});
    return {{"vars", p.nvars()}, {"terms", std::move(terms)}};
}

template <bool L>
basic_polynomial<Rational, L> basic_polynomial_from_json(const json& j) {
    return detail::json_guard([&] {
        int nvars = j.at("vars").get<int>();
        std::vector<Term<Rational>> terms;
        for (const auto& t : j.at("terms")) {
            auto exps = t.at("exp").get<std::vector<int>>();
            if (static_cast<int>(exps.size()) != nvars) throw parse_error("exponent vector length differs from vars");
            if (!L)
                for (int e : exps)
                    if (e < 0) throw parse_error("negative exponent in a polynomial");
            const auto& c = t.at("coef");
            Rational coef = c.is_string() ? parse_rational(c.get<std::string>()) : Rational(c.get<long>());
            terms.push_back(Term<Rational>{Monomial(std::span<const int>(exps)), coef});
        }
        return basic_polynomial<Rational, L>::from_terms(nvars, std::move(terms));
    });
}

inline Polynomial polynomial_from_json(const json& j) { return basic_polynomial_from_json<false>(j); }
inline LaurentPolynomial laurent_from_json(const json& j) { return basic_polynomial_from_json<true>(j); }

// {"rows": r, "cols": c, "entries": [[polynomial, ...], ...]}
template <bool L>
json to_json(const basic_matrix<basic_polynomial<Rational, L>>& m) {
    json rows = json::array();
    for (int r = 0; r < m.rows(); ++r) {
        json row = json::array();
        for (int c = 0; c < m.cols(); ++c) row.push_back(to_json(m(r, c)));
        rows.push_back(std::move(row));
    }
    return {{"rows", m.rows()}, {"cols", m.cols()}, {"entries", std::move(rows)}};
}

inline PolyMatrix matrix_from_json(const json& j) {
    return detail::json_guard([&] {
        int rows = j.at("rows").get<int>(), cols = j.at("cols").get<int>();
        const auto& e = j.at("entries");
        if (rows < 1 || cols < 1 || static_cast<int>(e.size()) != rows) throw parse_error("matrix row count mismatch");
        int nvars = -1;
        std::vector<Polynomial> entries;
        for (const auto& row : e) {
            if (static_cast<int>(row.size()) != cols) throw parse_error("matrix column count mismatch");
            for (const auto& x : row) {
                entries.push_back(polynomial_from_json(x));
                if (nvars < 0) nvars = entries.back().nvars();
                if (entries.back().nvars() != nvars) throw parse_error("matrix entries in different rings");
            }
        }
        PolyMatrix m(rows, cols, nvars);
        for (int r = 0; r < rows; ++r)
            for (int c = 0; c < cols; ++c) m(r, c) = std::move(entries[static_cast<std::size_t>(r * cols + c)]);
        return m;
    });
}

// {"l": l, "m": m, "terms": [{"alpha": [..], "coef": polynomial}]}
inline json to_json(const DiffOperator& op) {
    json terms = json::array();
    for (const auto& [alpha, f] : op.terms())
        terms.push_back({{"alpha", alpha.to_vector(op.l())}, {"coef", to_json(f)}});
    return {{"l", op.l()}, {"m", op.m()}, {"terms", std::move(terms)}};
}

inline DiffOperator operator_from_json(const json& j) {
    return detail::json_guard([&] {
        DiffOperator op(j.at("l").get<int>(), j.at("m").get<int>());
        for (const auto& t : j.at("terms")) {
            auto a = t.at("alpha").get<std::vector<int>>();
            if (static_cast<int>(a.size()) != op.l()) throw parse_error("multi-index length differs from l");
            op.add_term(MultiIndex(std::span<const int>(a)), polynomial_from_json(t.at("coef")));
        }
        return op;
    });
}

// A bare array of operators or {"operators": [...]}.
inline std::vector<DiffOperator> operators_from_json(const json& j) {
    return detail::json_guard([&] {
        const json& list = j.is_object() ? j.at("operators") : j;
        if (!list.is_array()) throw parse_error("expected an array of operators");
        std::vector<DiffOperator> ops;
        for (const auto& o : list) ops.push_back(operator_from_json(o));
        return ops;
    });
}

inline json to_json(const Certificate& c, int nvars, bool with_det = false) {
    json j = {{"is_basis", c.is_basis}, {"t_m", c.t_m}, {"method", c.method}, {"det_known", c.det_known}};
    j["c"] = c.c ? json(to_string(*c.c)) : json(nullptr);
    if (c.method == "modular") j["grid"] = {{"points", c.grid_points}, {"primes", c.grid_primes}};
    if (c.det_known) {
        json factors = json::array();
        for (const auto& [f, e] : c.det_factors) factors.push_back({{"factor", to_json(f)}, {"power", e}});
        j["det_factored"] = {{"unit", to_string(c.det_unit)}, {"factors", std::move(factors)}};
        if (with_det) j["det"] = to_json(c.det(nvars));
    }
    return j;
}

inline json to_json(const BasisSet& b) {
    json ops = json::array();
    for (const auto& op : b.operators()) ops.push_back(to_json(op));
    json names = json::array();
    for (int k = 1; k <= b.l; ++k) names.push_back("eta" + std::to_string(k));
    for (const auto& [p, op] : b.thetas) names.push_back("theta" + p.str());
    json j = {{"kind", to_string(b.kind)}, {"l", b.l}, {"m", b.m}, {"is_basis", b.certified},
              {"names", std::move(names)}, {"operators", std::move(ops)}};
    j["c"] = b.c ? json(to_string(*b.c)) : json(nullptr);
    std::vector<int> exps;
    for (const auto& op : b.operators()) exps.push_back(op.degree());
    std::sort(exps.begin(), exps.end());
    j["exponents"] = exps;
    if (b.certificate) j["certificate"] = to_json(*b.certificate, b.l);
    if (!b.warnings.empty()) j["warnings"] = b.warnings;
    return j;
}

} // namespace coxops
