#pragma once

// Exact coefficient domains: the integers, the rationals and prime fields.
// A domain object carries whatever runtime data its arithmetic needs (the
// modulus, for prime fields); values are plain data and never refer back to it.

#include <gmpxx.h>

#include <concepts>
#include <cstdint>
#include <string>
#include <string_view>

#include "eqcoh/error.hpp"

namespace eqcoh {

enum class CoefficientKind { Integers, Rationals, PrimeField };

/// Runtime descriptor of a coefficient ring, as named on the command line.
struct CoefficientRing {
    CoefficientKind kind = CoefficientKind::Rationals;
    std::uint32_t p = 0;

    bool is_field() const noexcept { return kind != CoefficientKind::Integers; }

    std::string name() const {
        switch (kind) {
            case CoefficientKind::Integers: return "Z";
            case CoefficientKind::Rationals: return "Q";
            case CoefficientKind::PrimeField: return p == 2 ? "F2" : "Fp:" + std::to_string(p);
        }
        return "?";
    }

    friend bool operator==(const CoefficientRing&, const CoefficientRing&) = default;

    /// Accepts "Z", "Q", "F2", "Fp:<p>" (and "F<p>" for small primes).
    static CoefficientRing parse(std::string_view text);
};

inline bool is_prime(std::uint64_t n) noexcept {
    if (n < 2) return false;
    for (std::uint64_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

inline CoefficientRing CoefficientRing::parse(std::string_view text) {
    if (text == "Z") return {CoefficientKind::Integers, 0};
    if (text == "Q") return {CoefficientKind::Rationals, 0};
    std::string_view digits;
    if (text.starts_with("Fp:"))
        digits = text.substr(3);
    else if (text.starts_with("F"))
        digits = text.substr(1);
    else
        throw ParseError("unknown coefficient ring '" + std::string(text) + "'");
    std::uint64_t p = 0;
    if (digits.empty()) throw ParseError("missing prime in '" + std::string(text) + "'");
    for (char c : digits) {
        if (c < '0' || c > '9') throw ParseError("bad prime in '" + std::string(text) + "'");
        p = p * 10 + static_cast<std::uint64_t>(c - '0');
        if (p > 0x7fffffffULL) throw ParseError("prime too large in '" + std::string(text) + "'");
    }
    if (!is_prime(p)) throw ParseError(std::to_string(p) + " is not prime");
    return {CoefficientKind::PrimeField, static_cast<std::uint32_t>(p)};
}

// ---------------------------------------------------------------------------

class Integers {
public:
    using value_type = mpz_class;
    static constexpr bool is_field = false;

    CoefficientRing descriptor() const { return {CoefficientKind::Integers, 0}; }
    unsigned long characteristic() const { return 0; }

    value_type zero() const { return 0; }
    value_type one() const { return 1; }
    value_type from_int(long v) const { return v; }
    bool is_zero(const value_type& a) const { return sgn(a) == 0; }
    bool is_one(const value_type& a) const { return a == 1; }
    bool is_unit(const value_type& a) const { return a == 1 || a == -1; }
    bool equal(const value_type& a, const value_type& b) const { return a == b; }
    value_type add(const value_type& a, const value_type& b) const { return a + b; }
    value_type sub(const value_type& a, const value_type& b) const { return a - b; }
    value_type neg(const value_type& a) const { return -a; }
    value_type mul(const value_type& a, const value_type& b) const { return a * b; }
    bool is_negative(const value_type& a) const { return sgn(a) < 0; }
    std::string to_string(const value_type& a) const { return a.get_str(); }
    value_type parse(std::string_view s) const {
        value_type v;
        if (v.set_str(std::string(s), 10) != 0) throw ParseError("bad integer '" + std::string(s) + "'");
        return v;
    }
    mpz_class to_integer(const value_type& a) const { return a; }

    friend bool operator==(const Integers&, const Integers&) { return true; }
};

class Rationals {
public:
    using value_type = mpq_class;
    static constexpr bool is_field = true;

    CoefficientRing descriptor() const { return {CoefficientKind::Rationals, 0}; }
    unsigned long characteristic() const { return 0; }

    value_type zero() const { return 0; }
    value_type one() const { return 1; }
    value_type from_int(long v) const { return v; }
    bool is_zero(const value_type& a) const { return sgn(a) == 0; }
    bool is_one(const value_type& a) const { return a == 1; }
    bool is_unit(const value_type& a) const { return !is_zero(a); }
    bool equal(const value_type& a, const value_type& b) const { return a == b; }
    value_type add(const value_type& a, const value_type& b) const { return a + b; }
    value_type sub(const value_type& a, const value_type& b) const { return a - b; }
    value_type neg(const value_type& a) const { return -a; }
    value_type mul(const value_type& a, const value_type& b) const { return a * b; }
    value_type inv(const value_type& a) const {
        if (is_zero(a)) throw Error("division by zero");
        return 1 / a;
    }
    bool is_negative(const value_type& a) const { return sgn(a) < 0; }
    std::string to_string(const value_type& a) const { return a.get_str(); }
    value_type parse(std::string_view s) const {
        value_type v;
        if (v.set_str(std::string(s), 10) != 0) throw ParseError("bad rational '" + std::string(s) + "'");
        v.canonicalize();
        return v;
    }

    friend bool operator==(const Rationals&, const Rationals&) { return true; }
};

class PrimeField {
public:
    using value_type = std::uint32_t;
    static constexpr bool is_field = true;

    explicit PrimeField(std::uint32_t p) : p_(p) {
        if (!is_prime(p)) throw InvalidSpec(std::to_string(p) + " is not prime");
    }

    std::uint32_t prime() const noexcept { return p_; }
    CoefficientRing descriptor() const { return {CoefficientKind::PrimeField, p_}; }
    unsigned long characteristic() const { return p_; }

    value_type zero() const { return 0; }
    value_type one() const { return 1; }
    value_type from_int(long v) const {
        long r = v % static_cast<long>(p_);
        return static_cast<value_type>(r < 0 ? r + p_ : r);
    }
    bool is_zero(value_type a) const { return a == 0; }
    bool is_one(value_type a) const { return a == 1; }
    bool is_unit(value_type a) const { return a != 0; }
    bool equal(value_type a, value_type b) const { return a == b; }
    value_type add(value_type a, value_type b) const {
        std::uint64_t s = std::uint64_t{a} + b;
        return static_cast<value_type>(s >= p_ ? s - p_ : s);
    }
    value_type sub(value_type a, value_type b) const { return a >= b ? a - b : a + (p_ - b); }
    value_type neg(value_type a) const { return a == 0 ? 0 : p_ - a; }
    value_type mul(value_type a, value_type b) const {
        return static_cast<value_type>(std::uint64_t{a} * b % p_);
    }
    value_type inv(value_type a) const {
        if (a == 0) throw Error("division by zero");
        // Extended Euclid on (a, p).
        std::int64_t t = 0, new_t = 1, r = p_, new_r = a;
        while (new_r != 0) {
            std::int64_t q = r / new_r;
            std::int64_t tmp = t - q * new_t;
            t = new_t;
            new_t = tmp;
            tmp = r - q * new_r;
            r = new_r;
            new_r = tmp;
        }
        if (t < 0) t += p_;
        return static_cast<value_type>(t);
    }
    bool is_negative(value_type) const { return false; }
    std::string to_string(value_type a) const { return std::to_string(a); }
    value_type parse(std::string_view s) const {
        mpz_class v;
        if (v.set_str(std::string(s), 10) != 0) throw ParseError("bad integer '" + std::string(s) + "'");
        mpz_class r = v % p_;
        if (r < 0) r += p_;
        return static_cast<value_type>(r.get_ui());
    }

    friend bool operator==(const PrimeField& a, const PrimeField& b) { return a.p_ == b.p_; }

private:
    std::uint32_t p_;
};

template <class D>
concept CoefficientDomain = requires(const D d, const typename D::value_type& a) {
    { d.zero() } -> std::convertible_to<typename D::value_type>;
    { d.one() } -> std::convertible_to<typename D::value_type>;
    { d.add(a, a) } -> std::convertible_to<typename D::value_type>;
    { d.mul(a, a) } -> std::convertible_to<typename D::value_type>;
    { d.is_zero(a) } -> std::convertible_to<bool>;
    { d.to_string(a) } -> std::convertible_to<std::string>;
    { D::is_field } -> std::convertible_to<bool>;
};

template <class D>
concept FieldDomain = CoefficientDomain<D> && D::is_field && requires(const D d, const typename D::value_type& a) {
    { d.inv(a) } -> std::convertible_to<typename D::value_type>;
};

}  // namespace eqcoh
