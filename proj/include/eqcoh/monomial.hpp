#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <cstring>
#include <functional>
#include <string>
#include <vector>

#include "eqcoh/error.hpp"

namespace eqcoh {

/// Upper bound on the number of ring variables.
inline constexpr std::size_t kMaxVars = 16;

enum class MonomialOrder { DegRevLex, DegLex, Lex };

inline std::string to_string(MonomialOrder o) {
    switch (o) {
        case MonomialOrder::DegRevLex: return "degrevlex";
        case MonomialOrder::DegLex: return "deglex";
        case MonomialOrder::Lex: return "lex";
    }
    return "?";
}

/// Exponent vector t1^a1 ... tn^an. Unused trailing slots are zero, so
/// monomials of different rings compare by value without knowing n.
class Monomial {
public:
    Monomial() { exps_.fill(0); }

    static Monomial variable(std::size_t i, unsigned power = 1) {
        Monomial m;
        m.set(i, power);
        return m;
    }

    static Monomial from_exponents(const std::vector<unsigned>& e) {
        if (e.size() > kMaxVars) throw Error("too many variables");
        Monomial m;
        for (std::size_t i = 0; i < e.size(); ++i) m.set(i, e[i]);
        return m;
    }

    unsigned operator[](std::size_t i) const noexcept { return exps_[i]; }
    unsigned degree() const noexcept { return degree_; }
    bool is_one() const noexcept { return degree_ == 0; }

    void set(std::size_t i, unsigned e) {
        if (i >= kMaxVars) throw Error("variable index out of range");
        if (e > 255) throw Error("exponent overflow");
        degree_ = degree_ - exps_[i] + e;
        exps_[i] = static_cast<std::uint8_t>(e);
    }

    bool divides(const Monomial& other) const noexcept {
        if (degree_ > other.degree_) return false;
        for (std::size_t i = 0; i < kMaxVars; ++i)
            if (exps_[i] > other.exps_[i]) return false;
        return true;
    }

    friend Monomial operator*(const Monomial& a, const Monomial& b) {
        Monomial m;
        for (std::size_t i = 0; i < kMaxVars; ++i) {
            unsigned e = unsigned{a.exps_[i]} + b.exps_[i];
            if (e > 255) throw Error("exponent overflow");
            m.exps_[i] = static_cast<std::uint8_t>(e);
        }
        m.degree_ = a.degree_ + b.degree_;
        return m;
    }

    /// a / b; requires b | a.
    friend Monomial operator/(const Monomial& a, const Monomial& b) {
        Monomial m;
        for (std::size_t i = 0; i < kMaxVars; ++i) m.exps_[i] = a.exps_[i] - b.exps_[i];
        m.degree_ = a.degree_ - b.degree_;
        return m;
    }

    friend Monomial lcm(const Monomial& a, const Monomial& b) {
        Monomial m;
        unsigned d = 0;
        for (std::size_t i = 0; i < kMaxVars; ++i) {
            m.exps_[i] = std::max(a.exps_[i], b.exps_[i]);
            d += m.exps_[i];
        }
        m.degree_ = d;
        return m;
    }

    friend bool coprime(const Monomial& a, const Monomial& b) noexcept {
        for (std::size_t i = 0; i < kMaxVars; ++i)
            if (a.exps_[i] != 0 && b.exps_[i] != 0) return false;
        return true;
    }

    friend bool operator==(const Monomial& a, const Monomial& b) noexcept {
        return a.exps_ == b.exps_;
    }

    std::size_t hash() const noexcept {
        std::uint64_t lo, hi;
        std::memcpy(&lo, exps_.data(), 8);
        std::memcpy(&hi, exps_.data() + 8, 8);
        return std::hash<std::uint64_t>{}(lo * 0x9e3779b97f4a7c15ULL ^ (hi + 0x632be59bd9b4e019ULL));
    }

    /// Variables in increasing index order; "1" for the empty monomial.
    std::string to_string(std::size_t num_vars) const {
        std::string s;
        for (std::size_t i = 0; i < num_vars; ++i) {
            if (exps_[i] == 0) continue;
            if (!s.empty()) s += '*';
            s += 't' + std::to_string(i + 1);
            if (exps_[i] > 1) s += '^' + std::to_string(exps_[i]);
        }
        return s.empty() ? "1" : s;
    }

private:
    std::array<std::uint8_t, kMaxVars> exps_;
    unsigned degree_ = 0;
};

struct MonomialHash {
    std::size_t operator()(const Monomial& m) const noexcept { return m.hash(); }
};

/// Three-way comparison under `order`: positive when a > b.
inline int compare(const Monomial& a, const Monomial& b, MonomialOrder order) noexcept {
    if (order != MonomialOrder::Lex && a.degree() != b.degree())
        return a.degree() > b.degree() ? 1 : -1;
    if (order == MonomialOrder::DegRevLex) {
        for (std::size_t i = kMaxVars; i-- > 0;)
            if (a[i] != b[i]) return a[i] < b[i] ? 1 : -1;
        return 0;
    }
    for (std::size_t i = 0; i < kMaxVars; ++i)
        if (a[i] != b[i]) return a[i] > b[i] ? 1 : -1;
    return 0;
}

/// All monomials in `num_vars` variables of exponent sum `degree`, in
/// decreasing order for `order`.
inline std::vector<Monomial> monomials_of_degree(std::size_t num_vars, unsigned degree,
                                                 MonomialOrder order = MonomialOrder::DegRevLex) {
    std::vector<Monomial> out;
    if (num_vars == 0) {
        if (degree == 0) out.emplace_back();
        return out;
    }
    std::vector<unsigned> e(num_vars, 0);
    // Enumerate compositions of `degree` into num_vars parts.
    std::function<void(std::size_t, unsigned)> rec = [&](std::size_t i, unsigned left) {
        if (i + 1 == num_vars) {
            e[i] = left;
            out.push_back(Monomial::from_exponents(e));
            return;
        }
        for (unsigned k = 0; k <= left; ++k) {
            e[i] = k;
            rec(i + 1, left - k);
        }
    };
    rec(0, degree);
    std::sort(out.begin(), out.end(),
              [order](const Monomial& a, const Monomial& b) { return compare(a, b, order) > 0; });
    return out;
}

}  // namespace eqcoh
