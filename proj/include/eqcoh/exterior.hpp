#pragma once

// Exterior algebra bookkeeping: subsets of {1..n} as bit masks, strata
// ranks, and the sign of contraction.

#include <bit>
#include <cstdint>
#include <string>
#include <vector>

#include "eqcoh/error.hpp"
#include "eqcoh/hilbert.hpp"

namespace eqcoh {

using Subset = std::uint32_t;

inline int subset_size(Subset s) { return std::popcount(s); }

/// Subsets of {1..n} of size k, lexicographic in their sorted element lists:
/// for n = 3, k = 2 this is {1,2}, {1,3}, {2,3}.
inline std::vector<Subset> subsets_of_size(int n, int k) {
    std::vector<Subset> out;
    if (k < 0 || k > n) return out;
    std::vector<int> idx(static_cast<std::size_t>(k));
    for (int i = 0; i < k; ++i) idx[static_cast<std::size_t>(i)] = i;
    for (;;) {
        Subset s = 0;
        for (int i : idx) s |= Subset{1} << i;
        out.push_back(s);
        int i = k - 1;
        while (i >= 0 && idx[static_cast<std::size_t>(i)] == n - k + i) --i;
        if (i < 0) break;
        ++idx[static_cast<std::size_t>(i)];
        for (int j = i + 1; j < k; ++j) idx[static_cast<std::size_t>(j)] = idx[static_cast<std::size_t>(j - 1)] + 1;
    }
    return out;
}

/// Sign of removing element i (zero-based) from S: (-1)^(position - 1) with
/// the position of i in sorted S counted from 1.
inline int contraction_sign(Subset s, int i) {
    int before = std::popcount(s & ((Subset{1} << i) - 1));
    return before % 2 == 0 ? 1 : -1;
}

/// "e12", "e13", ...; "e{1,10}" once some index has two digits; "1" for the empty set.
inline std::string subset_name(Subset s, int n) {
    if (s == 0) return "1";
    std::string body;
    bool wide = n > 9;
    for (int i = 0; i < n; ++i)
        if (s & (Subset{1} << i)) {
            if (wide && !body.empty()) body += ",";
            body += std::to_string(i + 1);
        }
    return wide ? "e{" + body + "}" : "e" + body;
}

enum class ExteriorRange { Full, Vee, Diamond };

/// Exterior degrees covered: full 0..n, vee 0..n-1, diamond 1..n-1.
inline std::pair<int, int> exterior_degree_range(int n, ExteriorRange which) {
    switch (which) {
        case ExteriorRange::Full: return {0, n};
        case ExteriorRange::Vee: return {0, n - 1};
        case ExteriorRange::Diamond: return {1, n - 1};
    }
    return {0, n};
}

/// (exterior degree, rank) for every degree in the requested range.
inline std::vector<std::pair<int, std::int64_t>> exterior_ranks(int n, ExteriorRange which) {
    if (n < 1) throw InvalidSpec("exterior algebra needs at least one generator");
    auto [lo, hi] = exterior_degree_range(n, which);
    std::vector<std::pair<int, std::int64_t>> out;
    for (int k = lo; k <= hi; ++k) out.emplace_back(k, binomial(n, k));
    return out;
}

/// A range of exterior degrees with generator weight e: the stratum of
/// degree k sits at shift base + k * e.
struct ExteriorSlice {
    int n = 0;
    int k_min = 0;
    int k_max = 0;
    int gen_weight = 1;

    std::vector<Subset> basis() const {
        std::vector<Subset> out;
        for (int k = k_min; k <= k_max; ++k)
            for (auto s : subsets_of_size(n, k)) out.push_back(s);
        return out;
    }
    std::int64_t rank() const {
        std::int64_t r = 0;
        for (int k = k_min; k <= k_max; ++k) r += binomial(n, k);
        return r;
    }
};

}  // namespace eqcoh
