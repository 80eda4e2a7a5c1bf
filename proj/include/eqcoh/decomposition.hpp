#pragma once

// Expected module shapes: direct sums of shifted free modules and shifted
// maximal ideals, with closed-form Hilbert series and Betti tables.

#include <string>
#include <vector>

#include "eqcoh/hilbert.hpp"
#include "eqcoh/presentation.hpp"

namespace eqcoh {

struct Summand {
    enum class Kind { Free, MaxIdeal };
    Kind kind = Kind::Free;
    long shift = 0;

    static Summand free(long s) { return {Kind::Free, s}; }
    static Summand max_ideal(long s) { return {Kind::MaxIdeal, s}; }
    friend bool operator==(const Summand&, const Summand&) = default;
};

struct DecompositionSpec {
    std::size_t num_vars = 0;
    int weight = 1;
    std::vector<Summand> summands;

    /// "R + m[-1] + R[3] + R[4]".
    std::string to_string() const {
        if (summands.empty()) return "0";
        std::string s;
        for (const auto& x : summands) {
            if (!s.empty()) s += " + ";
            s += x.kind == Summand::Kind::Free ? "R" : "m";
            if (x.shift != 0) s += "[" + std::to_string(x.shift) + "]";
        }
        return s;
    }

    HilbertSeries hilbert_series() const {
        LaurentPoly num;
        LaurentPoly koszul = LaurentPoly::one();
        for (std::size_t i = 0; i < num_vars; ++i) koszul = koszul * (LaurentPoly::one() - LaurentPoly::monomial(weight));
        for (const auto& x : summands) {
            if (x.kind == Summand::Kind::Free)
                num += LaurentPoly::monomial(x.shift);
            else
                num += (LaurentPoly::one() - koszul).shifted(x.shift);
        }
        return {num, num_vars, weight};
    }

    /// m over n variables is resolved by the Koszul complex with the last
    /// term dropped: beta_i = C(n, i + 1) in degree (i + 1) w.
    GradedBettiTable betti_table() const {
        GradedBettiTable t;
        for (const auto& x : summands) {
            if (x.kind == Summand::Kind::Free) {
                t.add_row_entries(0, {x.shift});
                continue;
            }
            for (std::size_t i = 0; i < num_vars; ++i) {
                auto count = binomial(static_cast<std::int64_t>(num_vars), static_cast<std::int64_t>(i + 1));
                t.add_row_entries(i, std::vector<long>(static_cast<std::size_t>(count),
                                                       x.shift + static_cast<long>(i + 1) * weight));
            }
        }
        t.trim();
        return t;
    }

    std::int64_t rank() const { return static_cast<std::int64_t>(summands.size()); }

    bool all_free() const {
        for (const auto& x : summands)
            if (x.kind != Summand::Kind::Free) return false;
        return true;
    }

    /// Free if every summand is free (m over one variable is free too),
    /// otherwise torsion-free but not free.
    ModuleClass analytic_class() const {
        return all_free() || num_vars <= 1 ? ModuleClass::Free : ModuleClass::TorsionFreeNotFree;
    }

    /// Largest degree of a minimal generator or first relation.
    long max_generator_degree() const {
        long m = 0;
        for (const auto& x : summands)
            m = std::max(m, x.kind == Summand::Kind::Free ? x.shift : x.shift + 2L * weight);
        return m;
    }
};

}  // namespace eqcoh
