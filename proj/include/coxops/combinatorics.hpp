#pragma once

#include <algorithm>
#include <cstddef>
#include <numeric>
#include <vector>

#include "coxops/errors.hpp"

namespace coxops {

// All strictly increasing sequences 1 <= c_1 < ... < c_k <= n, in increasing
// lexicographic order.
inline std::vector<std::vector<int>> combinations(int n, int k) {
    if (k < 0 || n < 0 || k > n) throw invalid_argument("combinations: need 0 <= k <= n");
    std::vector<std::vector<int>> out;
    std::vector<int> c(static_cast<std::size_t>(k));
    std::iota(c.begin(), c.end(), 1);
    while (true) {
        out.push_back(c);
        int i = k - 1;
        while (i >= 0 && c[static_cast<std::size_t>(i)] == n - k + i + 1) --i;
        if (i < 0) break;
        ++c[static_cast<std::size_t>(i)];
        for (int j = i + 1; j < k; ++j) c[static_cast<std::size_t>(j)] = c[static_cast<std::size_t>(j - 1)] + 1;
    }
    return out;
}

// All compositions (a_1..a_n) of `total` into n nonnegative parts, in
// descending lexicographic order: (m,0,..,0) first, (0,..,0,m) last.
inline std::vector<std::vector<int>> compositions_desc(int n, int total) {
    if (n <= 0 || total < 0) throw invalid_argument("compositions: need n >= 1 and total >= 0");
    std::vector<std::vector<int>> out;
    std::vector<int> a(static_cast<std::size_t>(n), 0);
    auto rec = [&](auto&& self, int pos, int left) -> void {
        if (pos == n - 1) {
            a[static_cast<std::size_t>(pos)] = left;
            out.push_back(a);
            return;
        }
        for (int v = left; v >= 0; --v) {
            a[static_cast<std::size_t>(pos)] = v;
            self(self, pos + 1, left - v);
        }
    };
    rec(rec, 0, total);
    return out;
}

// Weakly decreasing sequences max_part >= p_1 >= ... >= p_k >= 0, in
// descending lexicographic order.
inline std::vector<std::vector<int>> partitions_in_box(int k, int max_part) {
    if (k < 1 || max_part < 0) throw invalid_argument("partitions: need k >= 1 and max_part >= 0");
    std::vector<std::vector<int>> out;
    std::vector<int> p(static_cast<std::size_t>(k), 0);
    auto rec = [&](auto&& self, int pos, int bound) -> void {
        if (pos == k) {
            out.push_back(p);
            return;
        }
        for (int v = bound; v >= 0; --v) {
            p[static_cast<std::size_t>(pos)] = v;
            self(self, pos + 1, v);
        }
    };
    rec(rec, 0, max_part);
    return out;
}

// Sign of the permutation sorting `v` (entries distinct).
inline int permutation_sign(std::vector<int> v) {
    int sign = 1;
    for (std::size_t i = 0; i < v.size(); ++i) {
        while (v[i] != static_cast<int>(i)) {
            std::swap(v[i], v[static_cast<std::size_t>(v[i])]);
            sign = -sign;
        }
    }
    return sign;
}

} // namespace coxops
