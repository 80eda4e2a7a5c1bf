#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "eqcoh/error.hpp"
#include "eqcoh/monomial.hpp"

namespace eqcoh {

/// Integer Laurent polynomial in one variable q. Used for Hilbert-series
/// numerators and for Poincare polynomials.
class LaurentPoly {
public:
    LaurentPoly() = default;
    static LaurentPoly monomial(long exponent, std::int64_t coeff = 1) {
        LaurentPoly p;
        if (coeff != 0) p.c_[exponent] = coeff;
        return p;
    }
    static LaurentPoly one() { return monomial(0, 1); }

    std::int64_t operator[](long e) const {
        auto it = c_.find(e);
        return it == c_.end() ? 0 : it->second;
    }
    const std::map<long, std::int64_t>& coefficients() const noexcept { return c_; }
    bool is_zero() const noexcept { return c_.empty(); }
    long min_exponent() const { return c_.empty() ? 0 : c_.begin()->first; }
    long max_exponent() const { return c_.empty() ? 0 : c_.rbegin()->first; }

    void add_term(long e, std::int64_t v) {
        if (v == 0) return;
        auto& slot = c_[e];
        slot += v;
        if (slot == 0) c_.erase(e);
    }

    LaurentPoly& operator+=(const LaurentPoly& o) {
        for (auto [e, v] : o.c_) add_term(e, v);
        return *this;
    }
    LaurentPoly& operator-=(const LaurentPoly& o) {
        for (auto [e, v] : o.c_) add_term(e, -v);
        return *this;
    }
    friend LaurentPoly operator+(LaurentPoly a, const LaurentPoly& b) { return a += b; }
    friend LaurentPoly operator-(LaurentPoly a, const LaurentPoly& b) { return a -= b; }
    friend LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b) {
        LaurentPoly r;
        for (auto [e1, v1] : a.c_)
            for (auto [e2, v2] : b.c_) r.add_term(e1 + e2, v1 * v2);
        return r;
    }
    LaurentPoly scaled(std::int64_t k) const {
        LaurentPoly r;
        for (auto [e, v] : c_) r.add_term(e, v * k);
        return r;
    }
    /// Multiplication by q^s.
    LaurentPoly shifted(long s) const {
        LaurentPoly r;
        for (auto [e, v] : c_) r.c_[e + s] = v;
        return r;
    }
    /// P(1/q) * q^k.
    LaurentPoly reflected(long k) const {
        LaurentPoly r;
        for (auto [e, v] : c_) r.c_[k - e] = v;
        return r;
    }
    std::int64_t at_one() const {
        std::int64_t s = 0;
        for (auto [e, v] : c_) s += v;
        return s;
    }

    friend bool operator==(const LaurentPoly&, const LaurentPoly&) = default;

    /// "1 + 3q^3 + 3q^4 + q^7".
    std::string to_string() const {
        if (c_.empty()) return "0";
        std::string s;
        bool first = true;
        for (auto [e, v] : c_) {
            std::int64_t mag = v < 0 ? -v : v;
            if (first)
                s += v < 0 ? "-" : "";
            else
                s += v < 0 ? " - " : " + ";
            first = false;
            if (e == 0) {
                s += std::to_string(mag);
                continue;
            }
            if (mag != 1) s += std::to_string(mag);
            s += "q";
            if (e != 1) s += "^" + std::to_string(e);
        }
        return s;
    }

private:
    std::map<long, std::int64_t> c_;
};

inline std::int64_t binomial(std::int64_t n, std::int64_t k) {
    if (k < 0 || n < 0 || k > n) return 0;
    if (k > n - k) k = n - k;
    std::int64_t r = 1;
    for (std::int64_t i = 1; i <= k; ++i) {
        std::int64_t next;
        if (__builtin_mul_overflow(r, n - k + i, &next)) throw Error("binomial overflow");
        r = next / i;
    }
    return r;
}

/// Dimensions of a graded module in degrees start, start+1, ..., end.
struct HilbertFunction {
    long start = 0;
    std::vector<std::int64_t> values;

    long end() const { return start + static_cast<long>(values.size()) - 1; }
    std::int64_t at(long d) const {
        if (d < start || d > end()) return 0;
        return values[static_cast<std::size_t>(d - start)];
    }
    friend bool operator==(const HilbertFunction&, const HilbertFunction&) = default;
};

/// numerator(q) / (1 - q^w)^n.
class HilbertSeries {
public:
    HilbertSeries(LaurentPoly numerator, std::size_t num_vars, int weight)
        : num_(std::move(numerator)), n_(num_vars), w_(weight) {}

    static HilbertSeries zero(std::size_t n, int w) { return {LaurentPoly{}, n, w}; }
    /// The free module R[shift].
    static HilbertSeries free(std::size_t n, int w, long shift) {
        return {LaurentPoly::monomial(shift), n, w};
    }

    const LaurentPoly& numerator() const noexcept { return num_; }
    std::size_t num_vars() const noexcept { return n_; }
    int weight() const noexcept { return w_; }

    /// Rank over R: the numerator at q = 1.
    std::int64_t rank() const { return num_.at_one(); }

    std::int64_t at(long d) const {
        std::int64_t total = 0;
        for (auto [e, v] : num_.coefficients()) {
            long rest = d - e;
            if (rest < 0 || rest % w_ != 0) continue;
            long k = rest / w_;
            total += v * (n_ == 0 ? (k == 0 ? 1 : 0) : binomial(k + static_cast<long>(n_) - 1, static_cast<long>(n_) - 1));
        }
        return total;
    }

    HilbertFunction truncate(long start, long end) const {
        HilbertFunction h{start, {}};
        for (long d = start; d <= end; ++d) h.values.push_back(at(d));
        return h;
    }

    HilbertSeries shifted(long s) const { return {num_.shifted(s), n_, w_}; }

    /// Extension of scalars to one more variable: multiplies the series by 1/(1 - q^w).
    HilbertSeries with_extra_variable() const { return {num_, n_ + 1, w_}; }

    HilbertSeries& operator+=(const HilbertSeries& o) {
        check(o);
        num_ += o.num_;
        return *this;
    }
    HilbertSeries& operator-=(const HilbertSeries& o) {
        check(o);
        num_ -= o.num_;
        return *this;
    }
    friend HilbertSeries operator+(HilbertSeries a, const HilbertSeries& b) { return a += b; }
    friend HilbertSeries operator-(HilbertSeries a, const HilbertSeries& b) { return a -= b; }
    friend bool operator==(const HilbertSeries&, const HilbertSeries&) = default;

    std::string to_string() const {
        return "(" + num_.to_string() + ") / (1 - q" + (w_ == 1 ? "" : "^" + std::to_string(w_)) + ")^" + std::to_string(n_);
    }

private:
    void check(const HilbertSeries& o) const {
        if (o.n_ != n_ || o.w_ != w_) throw RingMismatch("Hilbert series over different rings");
    }
    LaurentPoly num_;
    std::size_t n_;
    int w_;
};

namespace detail {

inline void minimalize_monomials(std::vector<Monomial>& gens) {
    std::sort(gens.begin(), gens.end(), [](const Monomial& a, const Monomial& b) { return a.degree() < b.degree(); });
    std::vector<Monomial> out;
    for (const auto& g : gens) {
        bool redundant = false;
        for (const auto& h : out)
            if (h.divides(g)) {
                redundant = true;
                break;
            }
        if (!redundant) out.push_back(g);
    }
    gens = std::move(out);
}

inline LaurentPoly ideal_numerator(std::vector<Monomial> gens, int w) {
    minimalize_monomials(gens);
    if (gens.empty()) return LaurentPoly::one();
    // Pick a generator involving two or more variables, if any.
    const Monomial* mixed = nullptr;
    for (const auto& g : gens) {
        int support = 0;
        for (std::size_t i = 0; i < kMaxVars; ++i) support += g[i] != 0;
        if (support >= 2) {
            mixed = &g;
            break;
        }
    }
    if (mixed == nullptr) {
        LaurentPoly r = LaurentPoly::one();
        for (const auto& g : gens) r = r * (LaurentPoly::one() - LaurentPoly::monomial(static_cast<long>(w) * g.degree()));
        return r;
    }
    std::size_t var = 0;
    while ((*mixed)[var] == 0) ++var;
    Monomial pivot = Monomial::variable(var, (*mixed)[var]);

    std::vector<Monomial> with_pivot = gens;
    with_pivot.push_back(pivot);
    std::vector<Monomial> colon;
    colon.reserve(gens.size());
    for (const auto& g : gens) {
        Monomial q = g;
        q.set(var, g[var] > pivot[var] ? g[var] - pivot[var] : 0);
        colon.push_back(q);
    }
    return ideal_numerator(std::move(with_pivot), w) +
           LaurentPoly::monomial(static_cast<long>(w) * pivot.degree()) * ideal_numerator(std::move(colon), w);
}

}  // namespace detail

/// Numerator K with HS(R/I) = K / (1 - q^w)^n for the monomial ideal I = (gens).
inline LaurentPoly monomial_ideal_numerator(std::vector<Monomial> gens, int w) {
    return detail::ideal_numerator(std::move(gens), w);
}

/// Number of monomials of exponent sum `degree` in n variables not divisible by
/// any of `gens`. Direct enumeration; independent of monomial_ideal_numerator.
inline std::int64_t count_standard_monomials(const std::vector<Monomial>& gens, std::size_t n, unsigned degree) {
    std::int64_t count = 0;
    for (const auto& m : monomials_of_degree(n, degree)) {
        bool divisible = false;
        for (const auto& g : gens)
            if (g.divides(m)) {
                divisible = true;
                break;
            }
        count += !divisible;
    }
    return count;
}

}  // namespace eqcoh
