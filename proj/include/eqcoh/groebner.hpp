#pragma once

// Module Groebner bases over a field. Elements of a free module R^N are sparse
// vectors of terms c * t^a * e_i, ordered position-over-term: a smaller
// component index is more significant, ties broken by the ring's monomial
// order. All inputs must be homogeneous; the computation proceeds degree by
// degree, which also identifies a minimal generating set of the input.

#include <algorithm>
#include <cstdint>
#include <map>
#include <utility>
#include <vector>

#include "eqcoh/error.hpp"
#include "eqcoh/graded.hpp"
#include "eqcoh/polynomial.hpp"

namespace eqcoh::gb {

template <CoefficientDomain D>
struct Term {
    Monomial mon;
    std::uint32_t comp;
    typename D::value_type coeff;
};

/// Sparse module element, terms strictly decreasing in the module order.
template <CoefficientDomain D>
using Vec = std::vector<Term<D>>;

inline std::uint32_t support_mask(const Monomial& m) noexcept {
    std::uint32_t mask = 0;
    for (std::size_t i = 0; i < kMaxVars; ++i)
        if (m[i] != 0) mask |= 1u << i;
    return mask;
}

/// The free module R^N with generator shifts, plus the module order.
template <CoefficientDomain D>
class FreeSpace {
public:
    FreeSpace(RingPtr<D> ring, std::vector<long> shifts) : ring_(std::move(ring)), shifts_(std::move(shifts)) {}

    const RingPtr<D>& ring() const noexcept { return ring_; }
    const D& k() const noexcept { return ring_->coeffs(); }
    const std::vector<long>& shifts() const noexcept { return shifts_; }
    std::size_t rank() const noexcept { return shifts_.size(); }

    int compare(const Monomial& ma, std::uint32_t ca, const Monomial& mb, std::uint32_t cb) const noexcept {
        if (ca != cb) return ca < cb ? 1 : -1;
        return ring_->compare(ma, mb);
    }
    int compare(const Term<D>& a, const Term<D>& b) const noexcept { return compare(a.mon, a.comp, b.mon, b.comp); }

    long degree(const Term<D>& t) const { return ring_->degree(t.mon) + shifts_[t.comp]; }
    long degree(const Vec<D>& v) const { return degree(v.front()); }

    bool is_homogeneous(const Vec<D>& v) const {
        for (const auto& t : v)
            if (degree(t) != degree(v.front())) return false;
        return true;
    }

    Vec<D> normalize(Vec<D> v) const {
        std::sort(v.begin(), v.end(), [this](const Term<D>& a, const Term<D>& b) { return compare(a, b) > 0; });
        Vec<D> out;
        out.reserve(v.size());
        for (auto& t : v) {
            if (!out.empty() && out.back().comp == t.comp && out.back().mon == t.mon)
                out.back().coeff = k().add(out.back().coeff, t.coeff);
            else
                out.push_back(std::move(t));
        }
        std::erase_if(out, [this](const Term<D>& t) { return k().is_zero(t.coeff); });
        return out;
    }

    /// f - c * m * g, where every term of c*m*g is smaller than f[from-1].
    /// Terms f[0, from) are copied unchanged.
    Vec<D> sub_multiple(const Vec<D>& f, std::size_t from, const typename D::value_type& c, const Monomial& m,
                        const Vec<D>& g, std::size_t g_from) const {
        const D& K = k();
        Vec<D> out;
        out.reserve(f.size() + g.size());
        out.insert(out.end(), f.begin(), f.begin() + static_cast<std::ptrdiff_t>(from));
        std::size_t i = from, j = g_from;
        while (i < f.size() || j < g.size()) {
            int cmp;
            Monomial gm;
            if (j < g.size()) gm = g[j].mon * m;
            if (i == f.size())
                cmp = -1;
            else if (j == g.size())
                cmp = 1;
            else
                cmp = compare(f[i].mon, f[i].comp, gm, g[j].comp);
            if (cmp > 0) {
                out.push_back(f[i++]);
            } else if (cmp < 0) {
                out.push_back({gm, g[j].comp, K.neg(K.mul(c, g[j].coeff))});
                ++j;
            } else {
                auto v = K.sub(f[i].coeff, K.mul(c, g[j].coeff));
                if (!K.is_zero(v)) out.push_back({f[i].mon, f[i].comp, std::move(v)});
                ++i;
                ++j;
            }
        }
        return out;
    }

    Vec<D> add(const Vec<D>& a, const Vec<D>& b) const {
        return sub_multiple(a, 0, k().neg(k().one()), Monomial{}, b, 0);
    }
    Vec<D> scaled(const Vec<D>& a, const typename D::value_type& c, const Monomial& m = {}) const {
        Vec<D> out;
        if (k().is_zero(c)) return out;
        out.reserve(a.size());
        for (const auto& t : a) out.push_back({t.mon * m, t.comp, k().mul(t.coeff, c)});
        return out;
    }

private:
    RingPtr<D> ring_;
    std::vector<long> shifts_;
};

/// Column j of a matrix, as a module element of the target.
template <CoefficientDomain D>
Vec<D> column_vec(const FreeSpace<D>& space, const GradedMap<D>& m, std::size_t j) {
    Vec<D> v;
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (const auto& t : m.entry(i, j).terms()) v.push_back({t.mon, static_cast<std::uint32_t>(i), t.coeff});
    return space.normalize(std::move(v));
}

/// Component polynomials of a module element of rank `rank`, offset by `first`.
template <CoefficientDomain D>
std::vector<Polynomial<D>> vec_components(const RingPtr<D>& ring, const Vec<D>& v, std::size_t first,
                                          std::size_t rank) {
    std::vector<std::vector<typename Polynomial<D>::Term>> parts(rank);
    for (const auto& t : v) {
        if (t.comp < first || t.comp >= first + rank) continue;
        parts[t.comp - first].push_back({t.mon, t.coeff});
    }
    std::vector<Polynomial<D>> out;
    out.reserve(rank);
    for (auto& p : parts) out.push_back(Polynomial<D>::from_terms(ring, std::move(p)));
    return out;
}

struct Options {
    /// Report which inputs form a minimal generating set (inputs are
    /// considered in order of degree, ties by position).
    bool detect_minimal = false;
    /// Interreduce the final basis.
    bool reduce = true;
};

struct Stats {
    std::size_t pairs_considered = 0;
    std::size_t zero_reductions = 0;
};

template <FieldDomain D>
class GroebnerBasis {
public:
    GroebnerBasis(FreeSpace<D> space, std::vector<Vec<D>> gens, Options opts = {})
        : space_(std::move(space)), opts_(opts), by_comp_(space_.rank()) {
        run(std::move(gens));
    }

    const FreeSpace<D>& space() const noexcept { return space_; }
    const std::vector<Vec<D>>& elements() const noexcept { return basis_; }
    /// Input positions forming a minimal generating set (detect_minimal only).
    const std::vector<std::size_t>& minimal_inputs() const noexcept { return minimal_; }
    const Stats& stats() const noexcept { return stats_; }

    /// Leading monomials of basis elements in component c.
    std::vector<Monomial> leading_monomials(std::uint32_t c) const {
        std::vector<Monomial> out;
        for (std::size_t idx : by_comp_[c]) out.push_back(basis_[idx].front().mon);
        return out;
    }

    /// Full normal form of f.
    Vec<D> normal_form(Vec<D> f) const { return reduce(std::move(f), true, space_.rank()); }

    /// Top-reduces f while its leading term lies in a component < comp_limit.
    Vec<D> reduce_leading_below(Vec<D> f, std::uint32_t comp_limit) const {
        return reduce(std::move(f), false, comp_limit);
    }

    bool contains(const Vec<D>& f) const { return reduce(f, false, space_.rank()).empty(); }

private:
    struct Pair {
        std::size_t i, j;
        Monomial lcm;
        std::uint32_t comp;
        bool alive = true;
    };

    const Vec<D>* find_reducer(const Monomial& m, std::uint32_t comp, Monomial& quotient) const {
        std::uint32_t mask = support_mask(m);
        for (std::size_t idx : by_comp_[comp]) {
            if ((masks_[idx] & ~mask) != 0) continue;
            const Monomial& lead = basis_[idx].front().mon;
            if (lead.divides(m)) {
                quotient = m / lead;
                return &basis_[idx];
            }
        }
        return nullptr;
    }

    Vec<D> reduce(Vec<D> f, bool full, std::uint32_t comp_limit) const {
        const D& K = space_.k();
        std::size_t k = 0;
        Monomial q;
        while (k < f.size()) {
            if (f[k].comp >= comp_limit) break;
            const Vec<D>* g = find_reducer(f[k].mon, f[k].comp, q);
            if (g == nullptr) {
                if (!full) break;
                ++k;
                continue;
            }
            // Basis elements are monic.
            auto c = f[k].coeff;
            Vec<D> head(f.begin(), f.begin() + static_cast<std::ptrdiff_t>(k));
            Vec<D> tail(f.begin() + static_cast<std::ptrdiff_t>(k) + 1, f.end());
            Vec<D> merged = space_.sub_multiple(tail, 0, c, q, *g, 1);
            head.insert(head.end(), std::make_move_iterator(merged.begin()), std::make_move_iterator(merged.end()));
            f = std::move(head);
            (void)K;
        }
        return f;
    }

    void make_monic(Vec<D>& v) const {
        const D& K = space_.k();
        if (K.is_one(v.front().coeff)) return;
        auto inv = K.inv(v.front().coeff);
        for (auto& t : v) t.coeff = K.mul(t.coeff, inv);
    }

    Vec<D> spoly(const Pair& p) const {
        const Vec<D>& a = basis_[p.i];
        const Vec<D>& b = basis_[p.j];
        Monomial ma = p.lcm / a.front().mon;
        Monomial mb = p.lcm / b.front().mon;
        Vec<D> sa = space_.scaled(a, space_.k().one(), ma);
        // a, b monic: S = ma*a - mb*b; the leading terms cancel.
        Vec<D> tail_a(sa.begin() + 1, sa.end());
        return space_.sub_multiple(tail_a, 0, space_.k().one(), mb, b, 1);
    }

    long pair_degree(const Pair& p) const { return space_.ring()->degree(p.lcm) + space_.shifts()[p.comp]; }

    void insert(Vec<D> v) {
        make_monic(v);
        std::size_t t = basis_.size();
        const Monomial mt = v.front().mon;
        const std::uint32_t c = v.front().comp;
        basis_.push_back(std::move(v));
        masks_.push_back(support_mask(mt));

        // Chain criterion on existing pairs.
        for (auto& [deg, bucket] : pairs_)
            for (auto& p : bucket) {
                if (!p.alive || p.comp != c || !mt.divides(p.lcm)) continue;
                const Monomial& mi = basis_[p.i].front().mon;
                const Monomial& mj = basis_[p.j].front().mon;
                if (!(lcm(mi, mt) == p.lcm) && !(lcm(mj, mt) == p.lcm)) p.alive = false;
            }

        std::vector<Pair> fresh;
        for (std::size_t i : by_comp_[c]) fresh.push_back({i, t, lcm(basis_[i].front().mon, mt), c});
        // Drop pairs whose lcm is a proper multiple of another new lcm; keep one per lcm.
        std::vector<Pair> kept;
        for (std::size_t a = 0; a < fresh.size(); ++a) {
            bool drop = false;
            for (std::size_t b = 0; b < fresh.size() && !drop; ++b) {
                if (a == b) continue;
                if (fresh[b].lcm.divides(fresh[a].lcm)) {
                    if (!(fresh[b].lcm == fresh[a].lcm))
                        drop = true;
                    else if (b < a)
                        drop = true;
                }
            }
            if (!drop) kept.push_back(fresh[a]);
        }
        for (auto& p : kept) pairs_[pair_degree(p)].push_back(p);
        by_comp_[c].push_back(t);
    }

    void run(std::vector<Vec<D>> gens) {
        std::vector<std::size_t> order(gens.size());
        for (std::size_t i = 0; i < gens.size(); ++i) order[i] = i;
        std::vector<long> gdeg(gens.size(), 0);
        for (std::size_t i = 0; i < gens.size(); ++i) {
            gens[i] = space_.normalize(std::move(gens[i]));
            if (!gens[i].empty()) {
                if (!space_.is_homogeneous(gens[i])) throw Error("Groebner basis input is not homogeneous");
                gdeg[i] = space_.degree(gens[i]);
            }
        }
        std::erase_if(order, [&](std::size_t i) { return gens[i].empty(); });
        std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return gdeg[a] < gdeg[b]; });

        std::size_t next = 0;
        while (next < order.size() || !pairs_.empty()) {
            long d_pairs = pairs_.empty() ? 0 : pairs_.begin()->first;
            long d_gens = next < order.size() ? gdeg[order[next]] : 0;
            long d;
            if (pairs_.empty())
                d = d_gens;
            else if (next >= order.size())
                d = d_pairs;
            else
                d = std::min(d_pairs, d_gens);

            if (!pairs_.empty() && pairs_.begin()->first == d) {
                std::vector<Pair> batch = std::move(pairs_.begin()->second);
                pairs_.erase(pairs_.begin());
                for (const auto& p : batch) {
                    if (!p.alive) continue;
                    ++stats_.pairs_considered;
                    Vec<D> r = reduce(spoly(p), true, space_.rank());
                    if (r.empty()) {
                        ++stats_.zero_reductions;
                        continue;
                    }
                    insert(std::move(r));
                }
            }
            while (next < order.size() && gdeg[order[next]] == d) {
                std::size_t gi = order[next++];
                Vec<D> r = reduce(std::move(gens[gi]), true, space_.rank());
                if (r.empty()) continue;
                if (opts_.detect_minimal) minimal_.push_back(gi);
                insert(std::move(r));
            }
        }
        std::sort(minimal_.begin(), minimal_.end());
        if (opts_.reduce) interreduce();
    }

    void interreduce() {
        // Leads are pairwise non-divisible by construction; only tails may
        // still contain same-degree leading terms of later elements.
        for (std::size_t i = 0; i < basis_.size(); ++i) {
            Vec<D> tail(basis_[i].begin() + 1, basis_[i].end());
            Vec<D> lead(basis_[i].begin(), basis_[i].begin() + 1);
            Vec<D> r = reduce(std::move(tail), true, space_.rank());
            lead.insert(lead.end(), std::make_move_iterator(r.begin()), std::make_move_iterator(r.end()));
            basis_[i] = std::move(lead);
        }
    }

    FreeSpace<D> space_;
    Options opts_;
    std::vector<Vec<D>> basis_;
    std::vector<std::uint32_t> masks_;
    std::vector<std::vector<std::size_t>> by_comp_;
    std::map<long, std::vector<Pair>> pairs_;
    std::vector<std::size_t> minimal_;
    Stats stats_;
};

}  // namespace eqcoh::gb
