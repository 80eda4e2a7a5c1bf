#pragma once

#include <concepts>

#include <algorithm>
#include <cctype>
#include <memory>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "eqcoh/coefficients.hpp"
#include "eqcoh/error.hpp"
#include "eqcoh/monomial.hpp"

namespace eqcoh {

/// k[t1, ..., tn] with every variable of weight w.
template <CoefficientDomain D>
class PolynomialRing {
public:
    using domain_type = D;
    using coeff_type = typename D::value_type;

    PolynomialRing(D coeffs, std::size_t num_vars, int var_weight,
                   MonomialOrder order = MonomialOrder::DegRevLex)
        : coeffs_(std::move(coeffs)), n_(num_vars), w_(var_weight), order_(order) {
        if (num_vars > kMaxVars)
            throw InvalidSpec("at most " + std::to_string(kMaxVars) + " variables supported");
        if (var_weight < 1) throw InvalidSpec("variable weight must be positive");
    }

    const D& coeffs() const noexcept { return coeffs_; }
    std::size_t num_vars() const noexcept { return n_; }
    int var_weight() const noexcept { return w_; }
    MonomialOrder order() const noexcept { return order_; }

    /// Weighted degree of a monomial.
    long degree(const Monomial& m) const noexcept { return static_cast<long>(w_) * m.degree(); }

    int compare(const Monomial& a, const Monomial& b) const noexcept {
        return eqcoh::compare(a, b, order_);
    }

    std::string describe() const {
        return coeffs_.descriptor().name() + "[t1..t" + std::to_string(n_) + "], w=" + std::to_string(w_);
    }

    friend bool operator==(const PolynomialRing& a, const PolynomialRing& b) {
        return a.coeffs_ == b.coeffs_ && a.n_ == b.n_ && a.w_ == b.w_ && a.order_ == b.order_;
    }

private:
    D coeffs_;
    std::size_t n_;
    int w_;
    MonomialOrder order_;
};

template <CoefficientDomain D>
using RingPtr = std::shared_ptr<const PolynomialRing<D>>;

template <CoefficientDomain D>
RingPtr<D> make_ring(D coeffs, std::size_t num_vars, int var_weight,
                     MonomialOrder order = MonomialOrder::DegRevLex) {
    return std::make_shared<const PolynomialRing<D>>(std::move(coeffs), num_vars, var_weight, order);
}

template <CoefficientDomain D>
bool same_ring(const RingPtr<D>& a, const RingPtr<D>& b) {
    return a == b || (a && b && *a == *b);
}

/// Result of a homogeneity query. The zero polynomial is homogeneous of any degree.
struct HomogeneousDegree {
    enum class Kind { Any, Degree, NotHomogeneous };
    Kind kind = Kind::Any;
    long value = 0;

    static HomogeneousDegree any() { return {Kind::Any, 0}; }
    static HomogeneousDegree of(long d) { return {Kind::Degree, d}; }
    static HomogeneousDegree inhomogeneous() { return {Kind::NotHomogeneous, 0}; }

    bool is_homogeneous() const noexcept { return kind != Kind::NotHomogeneous; }
    /// True when a polynomial with this degree may appear where degree `d` is required.
    bool admits(long d) const noexcept {
        return kind == Kind::Any || (kind == Kind::Degree && value == d);
    }
    std::string to_string() const {
        switch (kind) {
            case Kind::Any: return "any (zero)";
            case Kind::Degree: return std::to_string(value);
            case Kind::NotHomogeneous: return "not homogeneous";
        }
        return "?";
    }
    friend bool operator==(const HomogeneousDegree&, const HomogeneousDegree&) = default;
};

template <CoefficientDomain D>
class Polynomial {
public:
    using coeff_type = typename D::value_type;

    struct Term {
        Monomial mon;
        coeff_type coeff;
    };

    explicit Polynomial(RingPtr<D> ring) : ring_(std::move(ring)) {}

    template <class T>
        requires std::same_as<T, coeff_type>
    static Polynomial constant(RingPtr<D> ring, const T& c) {
        Polynomial p(std::move(ring));
        if (!p.ring_->coeffs().is_zero(c)) p.terms_.push_back({Monomial{}, c});
        return p;
    }
    static Polynomial constant(RingPtr<D> ring, long c) {
        coeff_type v = ring->coeffs().from_int(c);
        return constant<coeff_type>(std::move(ring), v);
    }
    static Polynomial monomial(RingPtr<D> ring, const Monomial& m, const coeff_type& c) {
        Polynomial p(std::move(ring));
        if (!p.ring_->coeffs().is_zero(c)) p.terms_.push_back({m, c});
        return p;
    }
    /// The variable t_{i+1} (zero-based index).
    static Polynomial variable(RingPtr<D> ring, std::size_t i) {
        if (i >= ring->num_vars()) throw Error("variable index out of range");
        auto one = ring->coeffs().one();
        return monomial(std::move(ring), Monomial::variable(i), one);
    }
    /// Builds from arbitrary (possibly repeated, unordered, zero) terms.
    static Polynomial from_terms(RingPtr<D> ring, std::vector<Term> terms) {
        Polynomial p(std::move(ring));
        p.terms_ = std::move(terms);
        p.canonicalize();
        return p;
    }

    const RingPtr<D>& ring() const noexcept { return ring_; }
    const std::vector<Term>& terms() const noexcept { return terms_; }
    bool is_zero() const noexcept { return terms_.empty(); }
    std::size_t size() const noexcept { return terms_.size(); }

    /// Leading term under the ring's order; requires non-zero.
    const Term& leading() const { return terms_.front(); }

    coeff_type constant_term() const {
        if (!terms_.empty() && terms_.back().mon.is_one()) return terms_.back().coeff;
        return ring_->coeffs().zero();
    }

    HomogeneousDegree homogeneous_degree() const {
        if (terms_.empty()) return HomogeneousDegree::any();
        long d = ring_->degree(terms_.front().mon);
        for (const auto& t : terms_)
            if (ring_->degree(t.mon) != d) return HomogeneousDegree::inhomogeneous();
        return HomogeneousDegree::of(d);
    }

    Polynomial operator-() const {
        Polynomial r = *this;
        for (auto& t : r.terms_) t.coeff = ring_->coeffs().neg(t.coeff);
        return r;
    }

    friend Polynomial operator+(const Polynomial& a, const Polynomial& b) {
        check_same(a, b);
        return merge(a, b, false);
    }
    friend Polynomial operator-(const Polynomial& a, const Polynomial& b) {
        check_same(a, b);
        return merge(a, b, true);
    }
    friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
        check_same(a, b);
        const D& k = a.ring_->coeffs();
        std::vector<Term> out;
        out.reserve(a.terms_.size() * b.terms_.size());
        for (const auto& x : a.terms_)
            for (const auto& y : b.terms_) out.push_back({x.mon * y.mon, k.mul(x.coeff, y.coeff)});
        return from_terms(a.ring_, std::move(out));
    }
    Polynomial& operator+=(const Polynomial& b) { return *this = *this + b; }
    Polynomial& operator-=(const Polynomial& b) { return *this = *this - b; }
    Polynomial& operator*=(const Polynomial& b) { return *this = *this * b; }

    Polynomial scaled(const coeff_type& c) const {
        const D& k = ring_->coeffs();
        Polynomial r(ring_);
        if (k.is_zero(c)) return r;
        r.terms_.reserve(terms_.size());
        for (const auto& t : terms_) {
            auto v = k.mul(t.coeff, c);
            if (!k.is_zero(v)) r.terms_.push_back({t.mon, std::move(v)});
        }
        return r;
    }

    Polynomial times_monomial(const Monomial& m) const {
        Polynomial r = *this;
        for (auto& t : r.terms_) t.mon = t.mon * m;
        return r;
    }

    Polynomial pow(unsigned e) const {
        Polynomial r = constant(ring_, 1);
        for (unsigned i = 0; i < e; ++i) r = r * *this;
        return r;
    }

    /// Same terms viewed in another ring with the same coefficients and at
    /// least as many variables.
    Polynomial in_ring(RingPtr<D> other) const {
        if (!(other->coeffs() == ring_->coeffs()) || other->num_vars() < ring_->num_vars())
            throw RingMismatch("cannot embed " + ring_->describe() + " into " + other->describe());
        return from_terms(std::move(other), terms_);
    }

    friend bool operator==(const Polynomial& a, const Polynomial& b) {
        if (!same_ring(a.ring_, b.ring_) || a.terms_.size() != b.terms_.size()) return false;
        const D& k = a.ring_->coeffs();
        for (std::size_t i = 0; i < a.terms_.size(); ++i)
            if (!(a.terms_[i].mon == b.terms_[i].mon) || !k.equal(a.terms_[i].coeff, b.terms_[i].coeff))
                return false;
        return true;
    }

    std::string to_string() const {
        if (terms_.empty()) return "0";
        const D& k = ring_->coeffs();
        std::string s;
        bool first = true;
        for (const auto& t : terms_) {
            bool neg = k.is_negative(t.coeff);
            auto mag = neg ? k.neg(t.coeff) : t.coeff;
            if (first)
                s += neg ? "-" : "";
            else
                s += neg ? " - " : " + ";
            first = false;
            bool unit = k.is_one(mag);
            if (t.mon.is_one())
                s += k.to_string(mag);
            else if (unit)
                s += t.mon.to_string(ring_->num_vars());
            else
                s += k.to_string(mag) + "*" + t.mon.to_string(ring_->num_vars());
        }
        return s;
    }

    friend std::ostream& operator<<(std::ostream& os, const Polynomial& p) { return os << p.to_string(); }

private:
    static void check_same(const Polynomial& a, const Polynomial& b) {
        if (!same_ring(a.ring_, b.ring_))
            throw RingMismatch(a.ring_->describe() + " vs " + b.ring_->describe());
    }

    static Polynomial merge(const Polynomial& a, const Polynomial& b, bool subtract) {
        const auto& ring = *a.ring_;
        const D& k = ring.coeffs();
        Polynomial r(a.ring_);
        r.terms_.reserve(a.terms_.size() + b.terms_.size());
        std::size_t i = 0, j = 0;
        while (i < a.terms_.size() || j < b.terms_.size()) {
            int c;
            if (i == a.terms_.size())
                c = -1;
            else if (j == b.terms_.size())
                c = 1;
            else
                c = ring.compare(a.terms_[i].mon, b.terms_[j].mon);
            if (c > 0) {
                r.terms_.push_back(a.terms_[i++]);
            } else if (c < 0) {
                const auto& t = b.terms_[j++];
                r.terms_.push_back({t.mon, subtract ? k.neg(t.coeff) : t.coeff});
            } else {
                auto v = subtract ? k.sub(a.terms_[i].coeff, b.terms_[j].coeff)
                                  : k.add(a.terms_[i].coeff, b.terms_[j].coeff);
                if (!k.is_zero(v)) r.terms_.push_back({a.terms_[i].mon, std::move(v)});
                ++i;
                ++j;
            }
        }
        return r;
    }

    void canonicalize() {
        const auto& ring = *ring_;
        const D& k = ring.coeffs();
        std::sort(terms_.begin(), terms_.end(),
                  [&](const Term& x, const Term& y) { return ring.compare(x.mon, y.mon) > 0; });
        std::vector<Term> out;
        out.reserve(terms_.size());
        for (auto& t : terms_) {
            if (!out.empty() && out.back().mon == t.mon)
                out.back().coeff = k.add(out.back().coeff, t.coeff);
            else
                out.push_back(std::move(t));
        }
        std::erase_if(out, [&](const Term& t) { return k.is_zero(t.coeff); });
        terms_ = std::move(out);
    }

    RingPtr<D> ring_;
    std::vector<Term> terms_;
};

namespace detail {

/// Recursive-descent parser for "3*t1^2*t3 - t2", "(t1 + t2)^2", "1/2*t1".
template <CoefficientDomain D>
class PolynomialParser {
public:
    PolynomialParser(RingPtr<D> ring, std::string_view text) : ring_(std::move(ring)), s_(text) {}

    Polynomial<D> parse() {
        auto p = expr();
        skip_ws();
        if (pos_ != s_.size()) fail("unexpected character");
        return p;
    }

private:
    Polynomial<D> expr() {
        skip_ws();
        Polynomial<D> acc(ring_);
        bool negate = false;
        if (peek() == '+' || peek() == '-') {
            negate = peek() == '-';
            ++pos_;
        }
        auto t = term();
        acc = negate ? -t : t;
        for (;;) {
            skip_ws();
            char c = peek();
            if (c != '+' && c != '-') break;
            ++pos_;
            auto u = term();
            acc = c == '+' ? acc + u : acc - u;
        }
        return acc;
    }

    Polynomial<D> term() {
        auto acc = factor();
        for (;;) {
            skip_ws();
            if (peek() != '*') break;
            ++pos_;
            acc = acc * factor();
        }
        return acc;
    }

    Polynomial<D> factor() {
        skip_ws();
        Polynomial<D> base(ring_);
        char c = peek();
        if (c == '(') {
            ++pos_;
            base = expr();
            skip_ws();
            if (peek() != ')') fail("expected ')'");
            ++pos_;
        } else if (c == 't') {
            ++pos_;
            std::size_t idx = number();
            if (idx == 0 || idx > ring_->num_vars()) fail("variable t" + std::to_string(idx) + " not in ring");
            base = Polynomial<D>::variable(ring_, idx - 1);
        } else if (std::isdigit(static_cast<unsigned char>(c))) {
            std::size_t start = pos_;
            while (std::isdigit(static_cast<unsigned char>(peek()))) ++pos_;
            auto value = ring_->coeffs().parse(s_.substr(start, pos_ - start));
            base = Polynomial<D>::constant(ring_, value);
            skip_ws();
            if (peek() == '/') {
                ++pos_;
                skip_ws();
                std::size_t st = pos_;
                while (std::isdigit(static_cast<unsigned char>(peek()))) ++pos_;
                if (st == pos_) fail("expected denominator");
                if constexpr (D::is_field) {
                    auto den = ring_->coeffs().parse(s_.substr(st, pos_ - st));
                    base = base.scaled(ring_->coeffs().inv(den));
                } else {
                    fail("division requires field coefficients");
                }
            }
        } else if (c == '-') {
            ++pos_;
            return -factor();
        } else {
            fail("unexpected token");
        }
        skip_ws();
        if (peek() == '^') {
            ++pos_;
            base = base.pow(static_cast<unsigned>(number()));
        }
        return base;
    }

    std::size_t number() {
        skip_ws();
        std::size_t start = pos_;
        std::size_t v = 0;
        while (std::isdigit(static_cast<unsigned char>(peek()))) {
            v = v * 10 + static_cast<std::size_t>(peek() - '0');
            ++pos_;
            if (v > 100000) fail("number too large");
        }
        if (start == pos_) fail("expected number");
        return v;
    }

    char peek() const { return pos_ < s_.size() ? s_[pos_] : '\0'; }
    void skip_ws() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }
    [[noreturn]] void fail(const std::string& msg) const {
        throw ParseError(msg + " at offset " + std::to_string(pos_) + " in '" + std::string(s_) + "'");
    }

    RingPtr<D> ring_;
    std::string_view s_;
    std::size_t pos_ = 0;
};

}  // namespace detail

template <CoefficientDomain D>
Polynomial<D> parse_polynomial(const RingPtr<D>& ring, std::string_view text) {
    return detail::PolynomialParser<D>(ring, text).parse();
}

}  // namespace eqcoh
