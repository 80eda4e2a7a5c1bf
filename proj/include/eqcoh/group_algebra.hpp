#pragma once

// The integral group ring of G = (Z/2)^n on the group basis, and the passage
// to the exterior basis u_i = 1 - g_i over F_2.

#include <map>
#include <string>

#include <gmpxx.h>

#include "eqcoh/exterior.hpp"

namespace eqcoh {

/// Element of Z[G]; g_S is the product of the generators g_i, i in S.
class GroupAlgebraElement {
public:
    explicit GroupAlgebraElement(int n) : n_(n) {
        if (n < 1 || n > 20) throw InvalidSpec("group algebra rank out of range");
    }

    static GroupAlgebraElement identity(int n) { return basis(n, 0); }
    static GroupAlgebraElement basis(int n, Subset s, long c = 1) {
        GroupAlgebraElement e(n);
        e.add(s, c);
        return e;
    }
    static GroupAlgebraElement generator(int n, int i) { return basis(n, Subset{1} << i); }

    int rank() const noexcept { return n_; }
    const std::map<Subset, mpz_class>& coefficients() const noexcept { return c_; }
    mpz_class operator[](Subset s) const {
        auto it = c_.find(s);
        return it == c_.end() ? mpz_class(0) : it->second;
    }

    void add(Subset s, const mpz_class& v) {
        if (v == 0) return;
        auto& slot = c_[s];
        slot += v;
        if (slot == 0) c_.erase(s);
    }

    friend GroupAlgebraElement operator+(GroupAlgebraElement a, const GroupAlgebraElement& b) {
        a.check(b);
        for (const auto& [s, v] : b.c_) a.add(s, v);
        return a;
    }
    friend GroupAlgebraElement operator-(GroupAlgebraElement a, const GroupAlgebraElement& b) {
        a.check(b);
        for (const auto& [s, v] : b.c_) a.add(s, -v);
        return a;
    }
    friend GroupAlgebraElement operator*(const GroupAlgebraElement& a, const GroupAlgebraElement& b) {
        a.check(b);
        GroupAlgebraElement r(a.n_);
        for (const auto& [s, v] : a.c_)
            for (const auto& [t, x] : b.c_) r.add(s ^ t, v * x);
        return r;
    }
    GroupAlgebraElement scaled(const mpz_class& k) const {
        GroupAlgebraElement r(n_);
        for (const auto& [s, v] : c_) r.add(s, v * k);
        return r;
    }
    friend bool operator==(const GroupAlgebraElement&, const GroupAlgebraElement&) = default;

    /// Sum of coefficients: the image under g_i -> 1.
    mpz_class augmentation() const {
        mpz_class s = 0;
        for (const auto& [m, v] : c_) s += v;
        return s;
    }

    /// "1 - g1 - g2 + g1g2".
    std::string to_string() const {
        if (c_.empty()) return "0";
        std::string out;
        bool first = true;
        for (const auto& [s, v] : c_) {
            mpz_class mag = abs(v);
            out += first ? (v < 0 ? "-" : "") : (v < 0 ? " - " : " + ");
            first = false;
            std::string name;
            for (int i = 0; i < n_; ++i)
                if (s & (Subset{1} << i)) name += "g" + std::to_string(i + 1);
            if (name.empty())
                out += mag.get_str();
            else
                out += (mag == 1 ? "" : mag.get_str() + "*") + name;
        }
        return out;
    }

private:
    void check(const GroupAlgebraElement& o) const {
        if (o.n_ != n_) throw RingMismatch("group algebras of different rank");
    }
    int n_;
    std::map<Subset, mpz_class> c_;
};

/// (1 - g_1)(1 - g_2)...(1 - g_n).
inline GroupAlgebraElement group_algebra_omega(int n) {
    auto w = GroupAlgebraElement::identity(n);
    for (int i = 0; i < n; ++i) w = w * (GroupAlgebraElement::identity(n) - GroupAlgebraElement::generator(n, i));
    return w;
}

/// Coordinates mod 2 on the basis u_S = prod_{i in S} (1 - g_i). Over F_2,
/// g_T = sum_{S in T} u_S, so the coefficient of u_S is the parity of the
/// coefficients of all g_T with T containing S.
inline std::map<Subset, int> to_u_basis_mod2(const GroupAlgebraElement& x) {
    std::map<Subset, int> out;
    for (const auto& [t, v] : x.coefficients()) {
        if (mpz_odd_p(v.get_mpz_t()) == 0) continue;
        for (Subset s = t;; s = (s - 1) & t) {
            out[s] ^= 1;
            if (s == 0) break;
        }
    }
    std::erase_if(out, [](const auto& e) { return e.second == 0; });
    return out;
}

/// u_S written on the group basis: sum over T in S of g_T (signs vanish mod 2,
/// so the integral lift with coefficients (-1)^|T| is returned).
inline GroupAlgebraElement u_basis_element(int n, Subset s) {
    GroupAlgebraElement r(n);
    for (Subset t = s;; t = (t - 1) & s) {
        r.add(t, subset_size(t) % 2 == 0 ? 1 : -1);
        if (t == 0) break;
    }
    return r;
}

}  // namespace eqcoh
