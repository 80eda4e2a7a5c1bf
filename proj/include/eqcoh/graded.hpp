#pragma once

// Graded free modules over a polynomial ring, homogeneous maps between them
// and cochain complexes. Shift convention: M[s]_d = M_{d-s}, so the generator
// of R[s] sits in degree s. A map has a single degree; entry (i, j) of a map
// F -> G of degree k is homogeneous of degree shift_F(j) + k - shift_G(i).

#include <algorithm>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "eqcoh/error.hpp"
#include "eqcoh/hilbert.hpp"
#include "eqcoh/polynomial.hpp"

namespace eqcoh {

template <CoefficientDomain D>
class GradedFreeModule {
public:
    GradedFreeModule(RingPtr<D> ring, std::vector<long> shifts)
        : ring_(std::move(ring)), shifts_(std::move(shifts)) {}

    const RingPtr<D>& ring() const noexcept { return ring_; }
    const std::vector<long>& shifts() const noexcept { return shifts_; }
    std::size_t rank() const noexcept { return shifts_.size(); }
    long shift(std::size_t i) const { return shifts_.at(i); }

    /// Dimension of the degree-d component over the coefficient field.
    std::int64_t dimension(long d) const { return hilbert_series().at(d); }

    HilbertSeries hilbert_series() const {
        LaurentPoly num;
        for (long s : shifts_) num.add_term(s, 1);
        return {num, ring_->num_vars(), ring_->var_weight()};
    }

    /// Each generator moved up by s.
    GradedFreeModule shifted(long s) const {
        auto out = shifts_;
        for (auto& x : out) x += s;
        return {ring_, std::move(out)};
    }

    /// Dual basis with degrees of an element and its dual adding up to n.
    GradedFreeModule dual(long n) const {
        auto out = shifts_;
        for (auto& x : out) x = n - x;
        return {ring_, std::move(out)};
    }

    friend bool operator==(const GradedFreeModule& a, const GradedFreeModule& b) {
        return same_ring(a.ring_, b.ring_) && a.shifts_ == b.shifts_;
    }

private:
    RingPtr<D> ring_;
    std::vector<long> shifts_;
};

template <CoefficientDomain D>
GradedFreeModule<D> direct_sum(const std::vector<GradedFreeModule<D>>& parts, RingPtr<D> ring) {
    std::vector<long> shifts;
    for (const auto& p : parts) {
        if (!same_ring(p.ring(), ring)) throw RingMismatch("direct sum of modules over different rings");
        shifts.insert(shifts.end(), p.shifts().begin(), p.shifts().end());
    }
    return {std::move(ring), std::move(shifts)};
}

template <CoefficientDomain D>
class GradedMap {
public:
    using Matrix = std::vector<std::vector<Polynomial<D>>>;

    /// Zero map of the given degree.
    GradedMap(GradedFreeModule<D> source, GradedFreeModule<D> target, long map_degree)
        : source_(std::move(source)), target_(std::move(target)), degree_(map_degree) {
        if (!same_ring(source_.ring(), target_.ring())) throw RingMismatch("map between modules over different rings");
        entries_.assign(target_.rank(), std::vector<Polynomial<D>>(source_.rank(), Polynomial<D>(source_.ring())));
    }

    /// Unvalidated construction; pass the result through validate_graded_map.
    static GradedMap unchecked(GradedFreeModule<D> source, GradedFreeModule<D> target, Matrix entries, long map_degree) {
        GradedMap m(std::move(source), std::move(target), map_degree);
        if (entries.size() != m.target_.rank())
            throw Error("matrix has " + std::to_string(entries.size()) + " rows, target rank is " +
                        std::to_string(m.target_.rank()));
        for (const auto& row : entries)
            if (row.size() != m.source_.rank())
                throw Error("matrix row has " + std::to_string(row.size()) + " entries, source rank is " +
                            std::to_string(m.source_.rank()));
        m.entries_ = std::move(entries);
        return m;
    }

    const GradedFreeModule<D>& source() const noexcept { return source_; }
    const GradedFreeModule<D>& target() const noexcept { return target_; }
    const RingPtr<D>& ring() const noexcept { return source_.ring(); }
    long map_degree() const noexcept { return degree_; }
    std::size_t rows() const noexcept { return target_.rank(); }
    std::size_t cols() const noexcept { return source_.rank(); }
    const Polynomial<D>& entry(std::size_t i, std::size_t j) const { return entries_.at(i).at(j); }
    const Matrix& entries() const noexcept { return entries_; }

    void set(std::size_t i, std::size_t j, Polynomial<D> p) {
        if (!same_ring(p.ring(), ring())) throw RingMismatch("entry over a different ring");
        entries_.at(i).at(j) = std::move(p);
    }

    long expected_degree(std::size_t i, std::size_t j) const {
        return source_.shift(j) + degree_ - target_.shift(i);
    }

    bool is_zero() const {
        for (const auto& row : entries_)
            for (const auto& e : row)
                if (!e.is_zero()) return false;
        return true;
    }

    std::vector<Polynomial<D>> column(std::size_t j) const {
        std::vector<Polynomial<D>> c;
        c.reserve(rows());
        for (std::size_t i = 0; i < rows(); ++i) c.push_back(entries_[i][j]);
        return c;
    }

    GradedMap negated() const {
        GradedMap r = *this;
        for (auto& row : r.entries_)
            for (auto& e : row) e = -e;
        return r;
    }

    /// this ∘ first.
    GradedMap after(const GradedMap& first) const {
        if (!(first.target_ == source_)) throw Error("composition of incompatible maps");
        GradedMap r(first.source_, target_, first.degree_ + degree_);
        for (std::size_t i = 0; i < rows(); ++i)
            for (std::size_t k = 0; k < first.cols(); ++k) {
                Polynomial<D> acc(ring());
                for (std::size_t j = 0; j < cols(); ++j) {
                    if (entries_[i][j].is_zero() || first.entries_[j][k].is_zero()) continue;
                    acc += entries_[i][j] * first.entries_[j][k];
                }
                r.entries_[i][k] = std::move(acc);
            }
        return r;
    }

    friend bool operator==(const GradedMap& a, const GradedMap& b) {
        return a.source_ == b.source_ && a.target_ == b.target_ && a.degree_ == b.degree_ && a.entries_ == b.entries_;
    }

private:
    GradedFreeModule<D> source_;
    GradedFreeModule<D> target_;
    long degree_;
    Matrix entries_;
};

/// Checks every entry against the shift bookkeeping; returns the map unchanged.
template <CoefficientDomain D>
GradedMap<D> validate_graded_map(GradedMap<D> m) {
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) {
            auto hd = m.entry(i, j).homogeneous_degree();
            long expected = m.expected_degree(i, j);
            if (!hd.admits(expected)) throw InhomogeneousEntry(i, j, expected, hd.to_string());
        }
    return m;
}

template <CoefficientDomain D>
GradedMap<D> make_graded_map(GradedFreeModule<D> source, GradedFreeModule<D> target,
                             typename GradedMap<D>::Matrix entries, long map_degree) {
    return validate_graded_map(
        GradedMap<D>::unchecked(std::move(source), std::move(target), std::move(entries), map_degree));
}

/// B: F -> G becomes B^T: G' -> F' where primes denote duals with
/// degrees summing to n. The map degree is preserved.
template <CoefficientDomain D>
GradedMap<D> graded_transpose(const GradedMap<D>& b, long n) {
    GradedMap<D> t(b.target().dual(n), b.source().dual(n), b.map_degree());
    for (std::size_t i = 0; i < b.rows(); ++i)
        for (std::size_t j = 0; j < b.cols(); ++j) t.set(j, i, b.entry(i, j));
    return validate_graded_map(std::move(t));
}

/// Block-diagonal sum of maps.
template <CoefficientDomain D>
GradedMap<D> direct_sum(const std::vector<GradedMap<D>>& parts, RingPtr<D> ring, long map_degree) {
    std::vector<GradedFreeModule<D>> srcs, tgts;
    for (const auto& p : parts) {
        if (p.map_degree() != map_degree && !p.is_zero()) throw Error("direct sum of maps of different degrees");
        srcs.push_back(p.source());
        tgts.push_back(p.target());
    }
    GradedMap<D> r(direct_sum(srcs, ring), direct_sum(tgts, ring), map_degree);
    std::size_t r0 = 0, c0 = 0;
    for (const auto& p : parts) {
        for (std::size_t i = 0; i < p.rows(); ++i)
            for (std::size_t j = 0; j < p.cols(); ++j)
                if (!p.entry(i, j).is_zero()) r.set(r0 + i, c0 + j, p.entry(i, j));
        r0 += p.rows();
        c0 += p.cols();
    }
    return r;
}

// ---------------------------------------------------------------------------

/// Terms F_0, ..., F_m and differentials d_p : F_p -> F_{p+1}, each raising the
/// total degree by one. Positions are bookkeeping only.
template <CoefficientDomain D>
class CochainComplex {
public:
    const RingPtr<D>& ring() const { return terms_.front().ring(); }
    std::size_t length() const noexcept { return terms_.size(); }
    const GradedFreeModule<D>& term(std::size_t p) const { return terms_.at(p); }
    const std::vector<GradedFreeModule<D>>& terms() const noexcept { return terms_; }
    /// Differential leaving position p, or nullptr at the last position.
    const GradedMap<D>* differential(std::size_t p) const {
        return p < diffs_.size() ? &diffs_[p] : nullptr;
    }
    /// Differential entering position p, or nullptr at position 0.
    const GradedMap<D>* incoming(std::size_t p) const { return p == 0 ? nullptr : &diffs_.at(p - 1); }
    const std::vector<GradedMap<D>>& differentials() const noexcept { return diffs_; }
    const std::string& label(std::size_t p) const { return labels_.at(p); }
    const std::vector<std::string>& labels() const noexcept { return labels_; }

    /// Largest generator shift over all terms.
    long max_shift() const {
        long m = 0;
        for (const auto& t : terms_)
            for (long s : t.shifts()) m = std::max(m, s);
        return m;
    }
    long min_shift() const {
        long m = 0;
        bool any = false;
        for (const auto& t : terms_)
            for (long s : t.shifts()) {
                m = any ? std::min(m, s) : s;
                any = true;
            }
        return m;
    }

    template <CoefficientDomain E>
    friend CochainComplex<E> build_complex(std::vector<GradedFreeModule<E>>, std::vector<GradedMap<E>>,
                                           std::vector<std::string>, bool);

private:
    std::vector<GradedFreeModule<D>> terms_;
    std::vector<GradedMap<D>> diffs_;
    std::vector<std::string> labels_;
};

/// Validates and assembles a complex: shapes match, every differential has
/// degree +1 and homogeneous entries, consecutive composites vanish. With
/// `check_minimal`, also requires every entry to lie in the maximal ideal.
template <CoefficientDomain D>
CochainComplex<D> build_complex(std::vector<GradedFreeModule<D>> terms, std::vector<GradedMap<D>> diffs,
                                std::vector<std::string> labels = {}, bool check_minimal = false) {
    if (terms.empty()) throw InvalidComplex("no terms");
    if (diffs.size() + 1 != terms.size())
        throw InvalidComplex(std::to_string(terms.size()) + " terms need " + std::to_string(terms.size() - 1) +
                             " differentials, got " + std::to_string(diffs.size()));
    for (const auto& t : terms)
        if (!same_ring(t.ring(), terms.front().ring())) throw RingMismatch("complex terms over different rings");
    for (std::size_t p = 0; p < diffs.size(); ++p) {
        const auto& d = diffs[p];
        if (!(d.source() == terms[p]) || !(d.target() == terms[p + 1]))
            throw InvalidComplex("differential " + std::to_string(p) + " does not match its terms");
        if (d.map_degree() != 1)
            throw InvalidComplex("differential " + std::to_string(p) + " has degree " +
                                 std::to_string(d.map_degree()) + ", expected +1");
        validate_graded_map(d);
        if (check_minimal) {
            const auto& k = d.ring()->coeffs();
            for (std::size_t i = 0; i < d.rows(); ++i)
                for (std::size_t j = 0; j < d.cols(); ++j)
                    if (!k.is_zero(d.entry(i, j).constant_term()))
                        throw InvalidComplex("differential " + std::to_string(p) + " entry (" + std::to_string(i) +
                                             ", " + std::to_string(j) + ") = " + d.entry(i, j).to_string() +
                                             " does not lie in the maximal ideal");
        }
    }
    for (std::size_t p = 0; p + 1 < diffs.size(); ++p) {
        if (diffs[p].is_zero() || diffs[p + 1].is_zero()) continue;
        auto comp = diffs[p + 1].after(diffs[p]);
        for (std::size_t i = 0; i < comp.rows(); ++i)
            for (std::size_t j = 0; j < comp.cols(); ++j)
                if (!comp.entry(i, j).is_zero())
                    throw InvalidComplex("d" + std::to_string(p + 1) + " o d" + std::to_string(p) + " != 0 at (" +
                                         std::to_string(i) + ", " + std::to_string(j) +
                                         "): " + comp.entry(i, j).to_string());
    }
    if (labels.empty())
        for (std::size_t p = 0; p < terms.size(); ++p) labels.push_back("C" + std::to_string(p));
    if (labels.size() != terms.size()) throw InvalidComplex("label count does not match term count");

    CochainComplex<D> c;
    c.terms_ = std::move(terms);
    c.diffs_ = std::move(diffs);
    c.labels_ = std::move(labels);
    return c;
}

}  // namespace eqcoh
