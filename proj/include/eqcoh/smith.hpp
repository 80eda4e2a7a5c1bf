#pragma once

// Dense Smith normal form over Z with transformation matrices. Small blocks
// run on checked int64 and fall back to GMP integers on overflow.

#include <cstdint>
#include <cstdlib>
#include <vector>

#include <gmpxx.h>

#include "eqcoh/error.hpp"

namespace eqcoh {

template <class T>
using DenseMatrix = std::vector<std::vector<T>>;

template <class T>
struct SmithForm {
    DenseMatrix<T> u;  // rows x rows, unimodular
    DenseMatrix<T> s;  // rows x cols, diagonal
    DenseMatrix<T> v;  // cols x cols, unimodular
    std::vector<T> diagonal;  // nonzero diagonal entries, each dividing the next
};

namespace detail {

struct Overflow {};

inline std::int64_t ck_mul(std::int64_t a, std::int64_t b) {
    std::int64_t r;
    if (__builtin_mul_overflow(a, b, &r)) throw Overflow{};
    return r;
}
inline std::int64_t ck_sub(std::int64_t a, std::int64_t b) {
    std::int64_t r;
    if (__builtin_sub_overflow(a, b, &r)) throw Overflow{};
    return r;
}
inline std::int64_t ck_add(std::int64_t a, std::int64_t b) {
    std::int64_t r;
    if (__builtin_add_overflow(a, b, &r)) throw Overflow{};
    return r;
}
inline mpz_class ck_mul(const mpz_class& a, const mpz_class& b) { return a * b; }
inline mpz_class ck_sub(const mpz_class& a, const mpz_class& b) { return a - b; }
inline mpz_class ck_add(const mpz_class& a, const mpz_class& b) { return a + b; }

inline std::int64_t mag(std::int64_t a) {
    if (a == INT64_MIN) throw Overflow{};
    return a < 0 ? -a : a;
}
inline mpz_class mag(const mpz_class& a) { return abs(a); }
inline bool is_zero(std::int64_t a) { return a == 0; }
inline bool is_zero(const mpz_class& a) { return sgn(a) == 0; }
inline bool is_neg(std::int64_t a) { return a < 0; }
inline bool is_neg(const mpz_class& a) { return sgn(a) < 0; }
// Floor-free quotient toward zero, as in C++ integer division.
inline std::int64_t quot(std::int64_t a, std::int64_t b) { return a / b; }
inline mpz_class quot(const mpz_class& a, const mpz_class& b) {
    mpz_class q;
    mpz_tdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return q;
}

template <class T>
DenseMatrix<T> identity(std::size_t n) {
    DenseMatrix<T> m(n, std::vector<T>(n, T(0)));
    for (std::size_t i = 0; i < n; ++i) m[i][i] = T(1);
    return m;
}

template <class T>
class SmithRunner {
public:
    SmithRunner(DenseMatrix<T> a, std::size_t cols, bool track)
        : a_(std::move(a)), m_(a_.size()), n_(cols), track_(track) {
        if (track_) {
            u_ = identity<T>(m_);
            v_ = identity<T>(n_);
        }
    }

    SmithForm<T> run() {
        std::size_t t = 0;
        while (t < m_ && t < n_) {
            if (!place_pivot(t)) break;
            for (;;) {
                bool dirty = clear_column(t);
                dirty = clear_row(t) || dirty;
                if (dirty) {
                    place_pivot(t);
                    continue;
                }
                if (!fix_divisibility(t)) break;
            }
            if (is_neg(a_[t][t])) negate_row(t);
            ++t;
        }
        SmithForm<T> out;
        for (std::size_t i = 0; i < t; ++i) out.diagonal.push_back(a_[i][i]);
        out.s = std::move(a_);
        out.u = std::move(u_);
        out.v = std::move(v_);
        return out;
    }

private:
    // Moves a nonzero entry of least magnitude from the trailing block to (t, t).
    bool place_pivot(std::size_t t) {
        std::size_t bi = m_, bj = n_;
        T best(0);
        for (std::size_t i = t; i < m_; ++i)
            for (std::size_t j = t; j < n_; ++j) {
                if (is_zero(a_[i][j])) continue;
                T v = mag(a_[i][j]);
                if (bi == m_ || v < best) {
                    best = v;
                    bi = i;
                    bj = j;
                    if (best == T(1)) goto found;
                }
            }
        if (bi == m_) return false;
    found:
        if (bi != t) swap_rows(bi, t);
        if (bj != t) swap_cols(bj, t);
        return true;
    }

    bool clear_column(std::size_t t) {
        bool remainder = false;
        for (std::size_t i = t + 1; i < m_; ++i) {
            if (is_zero(a_[i][t])) continue;
            T q = quot(a_[i][t], a_[t][t]);
            add_row_multiple(i, t, q);
            if (!is_zero(a_[i][t])) remainder = true;
        }
        return remainder;
    }

    bool clear_row(std::size_t t) {
        bool remainder = false;
        for (std::size_t j = t + 1; j < n_; ++j) {
            if (is_zero(a_[t][j])) continue;
            T q = quot(a_[t][j], a_[t][t]);
            add_col_multiple(j, t, q);
            if (!is_zero(a_[t][j])) remainder = true;
        }
        return remainder;
    }

    // Ensures the pivot divides the trailing block; returns true if a row was
    // folded in and the pivot must be recomputed.
    bool fix_divisibility(std::size_t t) {
        const T& p = a_[t][t];
        if (mag(p) == T(1)) return false;
        for (std::size_t i = t + 1; i < m_; ++i)
            for (std::size_t j = t + 1; j < n_; ++j)
                if (!is_zero(a_[i][j]) && !is_zero(ck_sub(a_[i][j], ck_mul(quot(a_[i][j], p), p)))) {
                    add_row_multiple(t, i, T(-1));
                    return true;
                }
        return false;
    }

    // row_i -= q * row_k
    void add_row_multiple(std::size_t i, std::size_t k, const T& q) {
        for (std::size_t j = 0; j < n_; ++j)
            if (!is_zero(a_[k][j])) a_[i][j] = ck_sub(a_[i][j], ck_mul(q, a_[k][j]));
        if (track_)
            for (std::size_t j = 0; j < m_; ++j)
                if (!is_zero(u_[k][j])) u_[i][j] = ck_sub(u_[i][j], ck_mul(q, u_[k][j]));
    }
    // col_j -= q * col_k
    void add_col_multiple(std::size_t j, std::size_t k, const T& q) {
        for (std::size_t i = 0; i < m_; ++i)
            if (!is_zero(a_[i][k])) a_[i][j] = ck_sub(a_[i][j], ck_mul(q, a_[i][k]));
        if (track_)
            for (std::size_t i = 0; i < n_; ++i)
                if (!is_zero(v_[i][k])) v_[i][j] = ck_sub(v_[i][j], ck_mul(q, v_[i][k]));
    }
    void swap_rows(std::size_t a, std::size_t b) {
        std::swap(a_[a], a_[b]);
        if (track_) std::swap(u_[a], u_[b]);
    }
    void swap_cols(std::size_t a, std::size_t b) {
        for (auto& row : a_) std::swap(row[a], row[b]);
        if (track_)
            for (auto& row : v_) std::swap(row[a], row[b]);
    }
    void negate_row(std::size_t t) {
        for (auto& x : a_[t]) x = ck_sub(T(0), x);
        if (track_)
            for (auto& x : u_[t]) x = ck_sub(T(0), x);
    }

    DenseMatrix<T> a_, u_, v_;
    std::size_t m_, n_;
    bool track_;
};

template <class T>
DenseMatrix<T> multiply(const DenseMatrix<T>& a, const DenseMatrix<T>& b, std::size_t inner, std::size_t cols) {
    DenseMatrix<T> c(a.size(), std::vector<T>(cols, T(0)));
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t k = 0; k < inner; ++k) {
            if (is_zero(a[i][k])) continue;
            for (std::size_t j = 0; j < cols; ++j)
                if (!is_zero(b[k][j])) c[i][j] = ck_add(c[i][j], ck_mul(a[i][k], b[k][j]));
        }
    return c;
}

}  // namespace detail

/// Smith normal form of a rows x cols matrix. With `track`, u and v are
/// filled so that u * a * v = s.
template <class T>
SmithForm<T> smith_normal_form(DenseMatrix<T> a, std::size_t cols, bool track = true) {
    for (const auto& row : a)
        if (row.size() != cols) throw Error("smith_normal_form: ragged matrix");
    return detail::SmithRunner<T>(std::move(a), cols, track).run();
}

/// Checks u * a * v = s, s diagonal with a divisibility chain, and that u and
/// v are invertible over Z (determinant +-1, computed by a second reduction).
template <class T>
bool verify_smith(const DenseMatrix<T>& a, std::size_t cols, const SmithForm<T>& f) {
    const std::size_t rows = a.size();
    auto uav = detail::multiply(detail::multiply(f.u, a, rows, cols), f.v, cols, cols);
    if (uav != f.s) return false;
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < cols; ++j)
            if (i != j && !detail::is_zero(f.s[i][j])) return false;
    for (std::size_t i = 0; i + 1 < f.diagonal.size(); ++i) {
        const T& x = f.diagonal[i];
        const T& y = f.diagonal[i + 1];
        if (!detail::is_zero(detail::ck_sub(y, detail::ck_mul(detail::quot(y, x), x)))) return false;
    }
    auto unimodular = [](const DenseMatrix<T>& m) {
        auto g = smith_normal_form(m, m.size(), false);
        if (g.diagonal.size() != m.size()) return false;
        for (const auto& d : g.diagonal)
            if (!(d == T(1))) return false;
        return true;
    };
    return unimodular(f.u) && unimodular(f.v);
}

/// Invariant factors (nonzero diagonal) of an integer matrix, trying int64
/// first. With `verify`, transformation matrices are tracked and checked.
inline std::vector<mpz_class> invariant_factors(const DenseMatrix<mpz_class>& a, std::size_t cols, bool verify) {
    std::vector<mpz_class> out;
    bool fits = true;
    DenseMatrix<std::int64_t> small(a.size(), std::vector<std::int64_t>(cols, 0));
    for (std::size_t i = 0; i < a.size() && fits; ++i)
        for (std::size_t j = 0; j < cols; ++j) {
            if (!a[i][j].fits_slong_p()) {
                fits = false;
                break;
            }
            small[i][j] = a[i][j].get_si();
        }
    if (fits) {
        try {
            auto f = smith_normal_form(small, cols, verify);
            if (verify && !verify_smith(small, cols, f)) throw Error("Smith normal form verification failed");
            for (auto d : f.diagonal) out.emplace_back(static_cast<long>(d));
            return out;
        } catch (const detail::Overflow&) {
        }
    }
    auto f = smith_normal_form(a, cols, verify);
    if (verify && !verify_smith(a, cols, f)) throw Error("Smith normal form verification failed");
    return f.diagonal;
}

}  // namespace eqcoh
