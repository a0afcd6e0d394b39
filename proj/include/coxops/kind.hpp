#pragma once

#include <string>
#include <string_view>

#include "coxops/errors.hpp"

namespace coxops {

// Coxeter type tag shared by Schur constructions, arrangements, bases and
// group actions.
enum class Kind { A, B, D };

inline std::string to_string(Kind k) {
    switch (k) {
    case Kind::A: return "A";
    case Kind::B: return "B";
    case Kind::D: return "D";
    }
    return "?";
}

inline Kind parse_kind(std::string_view s) {
    if (s == "A" || s == "a") return Kind::A;
    if (s == "B" || s == "b") return Kind::B;
    if (s == "D" || s == "d") return Kind::D;
    throw invalid_argument("unknown kind '" + std::string(s) + "' (expected A, B or D)");
}

} // namespace coxops
