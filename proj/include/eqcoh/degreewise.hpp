#pragma once

// Degree-by-degree cohomology of cochain complexes by exact linear algebra.
// Each slice matrix is split into the connected components of its
// row/column incidence graph; every block is reduced densely, by Gaussian
// elimination over F_p or by Smith normal form over Z (and over Q after
// clearing denominators).

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <exception>
#include <map>
#include <mutex>
#include <numeric>
#include <optional>
#include <string>
#include <thread>
#include <unordered_map>
#include <vector>

#include "eqcoh/graded.hpp"
#include "eqcoh/smith.hpp"

namespace eqcoh {

// ---------------------------------------------------------------------------
// Worker pool

/// Worker count: EQCOH_JOBS if set, else the hardware concurrency.
inline unsigned default_jobs() {
    if (const char* env = std::getenv("EQCOH_JOBS")) {
        int v = std::atoi(env);
        if (v > 0) return static_cast<unsigned>(v);
    }
    unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : hw;
}

/// Runs f(0), ..., f(count - 1) on up to `jobs` threads. The first exception
/// by task index is rethrown.
template <class F>
void parallel_for(std::size_t count, unsigned jobs, F&& f) {
    if (jobs == 0) jobs = default_jobs();
    jobs = static_cast<unsigned>(std::min<std::size_t>(jobs, count));
    if (jobs <= 1) {
        for (std::size_t i = 0; i < count; ++i) f(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::exception_ptr> errors(count);
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < jobs; ++t)
        pool.emplace_back([&] {
            for (std::size_t i = next++; i < count; i = next++) {
                try {
                    f(i);
                } catch (...) {
                    errors[i] = std::current_exception();
                }
            }
        });
    for (auto& th : pool) th.join();
    for (auto& e : errors)
        if (e) std::rethrow_exception(e);
}

// ---------------------------------------------------------------------------
// Bases and slices

struct BasisElement {
    std::size_t gen;
    Monomial mon;
    friend bool operator==(const BasisElement&, const BasisElement&) = default;
};

/// Index of the degree-d part of a graded free module: generator-major,
/// monomials in decreasing monomial order.
class DegreeBasis {
public:
    template <CoefficientDomain D>
    DegreeBasis(const GradedFreeModule<D>& f, long d) {
        const auto& ring = *f.ring();
        offsets_.assign(f.rank(), kAbsent);
        mdeg_.assign(f.rank(), 0);
        for (std::size_t g = 0; g < f.rank(); ++g) {
            long rest = d - f.shift(g);
            if (rest < 0 || rest % ring.var_weight() != 0) continue;
            auto e = static_cast<unsigned>(rest / ring.var_weight());
            auto it = tables_.find(e);
            if (it == tables_.end()) {
                Table t;
                t.list = monomials_of_degree(ring.num_vars(), e, ring.order());
                for (std::uint32_t k = 0; k < t.list.size(); ++k) t.index.emplace(t.list[k], k);
                it = tables_.emplace(e, std::move(t)).first;
            }
            offsets_[g] = size_;
            mdeg_[g] = e;
            size_ += it->second.list.size();
        }
    }

    std::size_t size() const noexcept { return size_; }

    /// Position of (gen, mon), or kAbsent.
    std::size_t find(std::size_t gen, const Monomial& mon) const {
        if (offsets_[gen] == kAbsent || mon.degree() != mdeg_[gen]) return kAbsent;
        const auto& t = tables_.at(mdeg_[gen]);
        auto it = t.index.find(mon);
        return it == t.index.end() ? kAbsent : offsets_[gen] + it->second;
    }

    std::vector<BasisElement> elements() const {
        std::vector<BasisElement> out;
        out.reserve(size_);
        for (std::size_t g = 0; g < offsets_.size(); ++g) {
            if (offsets_[g] == kAbsent) continue;
            for (const auto& m : tables_.at(mdeg_[g]).list) out.push_back({g, m});
        }
        return out;
    }

    /// Calls f(index, gen, mon) for every basis element.
    template <class F>
    void for_each(F&& f) const {
        for (std::size_t g = 0; g < offsets_.size(); ++g) {
            if (offsets_[g] == kAbsent) continue;
            const auto& list = tables_.at(mdeg_[g]).list;
            for (std::size_t k = 0; k < list.size(); ++k) f(offsets_[g] + k, g, list[k]);
        }
    }

    static constexpr std::size_t kAbsent = static_cast<std::size_t>(-1);

private:
    struct Table {
        std::vector<Monomial> list;
        std::unordered_map<Monomial, std::uint32_t, MonomialHash> index;
    };
    std::map<unsigned, Table> tables_;
    std::vector<std::size_t> offsets_;
    std::vector<unsigned> mdeg_;
    std::size_t size_ = 0;
};

template <CoefficientDomain D>
std::vector<BasisElement> basis_at_degree(const GradedFreeModule<D>& f, long d) {
    return DegreeBasis(f, d).elements();
}

/// Compressed column storage; entries sorted by row within each column.
template <CoefficientDomain D>
struct SparseSlice {
    using value_type = typename D::value_type;
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<std::size_t> start{0};  // cols + 1 offsets
    std::vector<std::uint32_t> row_index;
    std::vector<value_type> values;

    std::size_t nonzeros() const { return row_index.size(); }
    bool column_empty(std::size_t j) const { return start[j] == start[j + 1]; }
    /// Calls f(row, value) for the entries of column j.
    template <class F>
    void for_column(std::size_t j, F&& f) const {
        for (std::size_t e = start[j]; e < start[j + 1]; ++e) f(row_index[e], values[e]);
    }
    DenseMatrix<value_type> dense(const D& k) const {
        DenseMatrix<value_type> a(rows, std::vector<value_type>(cols, k.zero()));
        for (std::size_t j = 0; j < cols; ++j) for_column(j, [&](std::uint32_t i, const value_type& v) { a[i][j] = v; });
        return a;
    }
};

/// Matrix of m from the degree-d part of its source to the degree
/// (d + map_degree) part of its target, in DegreeBasis coordinates.
template <CoefficientDomain D>
SparseSlice<D> slice_matrix(const GradedMap<D>& m, long d) {
    using V = typename D::value_type;
    const D& k = m.ring()->coeffs();
    DegreeBasis src(m.source(), d), tgt(m.target(), d + m.map_degree());
    SparseSlice<D> s;
    s.rows = tgt.size();
    s.cols = src.size();
    if (s.rows > UINT32_MAX) throw Error("slice_matrix: slice too large");
    s.start.reserve(s.cols + 1);
    // Column j of m, as (row, term) lists.
    std::vector<std::vector<std::pair<std::size_t, const typename Polynomial<D>::Term*>>> col_terms(m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j)
            for (const auto& t : m.entry(i, j).terms()) col_terms[j].push_back({i, &t});
    std::vector<std::pair<std::uint32_t, V>> col;
    src.for_each([&](std::size_t, std::size_t gen, const Monomial& mon) {
        col.clear();
        for (const auto& [row, term] : col_terms[gen]) {
            auto r = tgt.find(row, term->mon * mon);
            if (r == DegreeBasis::kAbsent) throw Error("slice_matrix: target basis element missing");
            col.push_back({static_cast<std::uint32_t>(r), term->coeff});
        }
        std::sort(col.begin(), col.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
        // Merge repeated rows.
        std::size_t e = 0;
        while (e < col.size()) {
            V v = col[e].second;
            std::size_t f = e + 1;
            for (; f < col.size() && col[f].first == col[e].first; ++f) v = k.add(v, col[f].second);
            if (!k.is_zero(v)) {
                s.row_index.push_back(col[e].first);
                s.values.push_back(std::move(v));
            }
            e = f;
        }
        s.start.push_back(s.row_index.size());
    });
    return s;
}

template <CoefficientDomain D>
SparseSlice<D> slice_matrix(const CochainComplex<D>& c, std::size_t position, long d) {
    const auto* m = c.differential(position);
    if (m == nullptr) {
        SparseSlice<D> s;
        s.cols = DegreeBasis(c.term(position), d).size();
        s.start.assign(s.cols + 1, 0);
        return s;
    }
    return slice_matrix(*m, d);
}

// ---------------------------------------------------------------------------
// Block decomposition and ranks

struct Block {
    std::vector<std::uint32_t> rows;
    std::vector<std::uint32_t> cols;
};

/// Connected components of the bipartite support graph, ordered by their
/// smallest column. Empty columns and rows are left out.
template <CoefficientDomain D>
std::vector<Block> connected_blocks(const SparseSlice<D>& s) {
    std::vector<std::uint32_t> parent(s.rows + s.cols);
    std::iota(parent.begin(), parent.end(), 0u);
    auto find = [&](std::uint32_t x) {
        while (parent[x] != x) {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        return x;
    };
    for (std::size_t j = 0; j < s.cols; ++j)
        for (std::size_t e = s.start[j]; e < s.start[j + 1]; ++e) {
            auto a = find(static_cast<std::uint32_t>(s.rows + j)), b = find(s.row_index[e]);
            if (a != b) parent[std::max(a, b)] = std::min(a, b);
        }
    std::unordered_map<std::uint32_t, std::size_t> id;
    std::vector<Block> blocks;
    for (std::size_t j = 0; j < s.cols; ++j) {
        if (s.column_empty(j)) continue;
        auto root = find(static_cast<std::uint32_t>(s.rows + j));
        auto [it, fresh] = id.emplace(root, blocks.size());
        if (fresh) blocks.emplace_back();
        blocks[it->second].cols.push_back(static_cast<std::uint32_t>(j));
    }
    for (std::uint32_t i = 0; i < s.rows; ++i) {
        auto it = id.find(find(i));
        if (it != id.end()) blocks[it->second].rows.push_back(i);
    }
    return blocks;
}

struct SliceRank {
    std::size_t rank = 0;
    /// Invariant factors greater than one (integral coefficients only).
    std::vector<mpz_class> torsion;
    std::size_t blocks = 0;
    std::size_t largest_block = 0;
};

namespace detail {

/// Dense copy of a block, with entries converted by conv.
template <class T, CoefficientDomain D, class Conv>
DenseMatrix<T> block_matrix(const SparseSlice<D>& s, const Block& b, Conv&& conv) {
    std::unordered_map<std::uint32_t, std::uint32_t> row_pos;
    for (std::uint32_t i = 0; i < b.rows.size(); ++i) row_pos.emplace(b.rows[i], i);
    DenseMatrix<T> a(b.rows.size(), std::vector<T>(b.cols.size(), T(0)));
    for (std::size_t j = 0; j < b.cols.size(); ++j)
        s.for_column(b.cols[j], [&](std::uint32_t i, const auto& v) { a[row_pos.at(i)][j] = conv(v); });
    return a;
}

inline std::size_t rank_mod_p(DenseMatrix<std::uint32_t> a, std::size_t cols, const PrimeField& k) {
    std::size_t rank = 0;
    const std::uint64_t p = k.prime();
    for (std::size_t c = 0; c < cols && rank < a.size(); ++c) {
        std::size_t piv = rank;
        while (piv < a.size() && a[piv][c] == 0) ++piv;
        if (piv == a.size()) continue;
        std::swap(a[piv], a[rank]);
        std::uint64_t inv = k.inv(a[rank][c]);
        for (std::size_t r = rank + 1; r < a.size(); ++r) {
            if (a[r][c] == 0) continue;
            std::uint64_t f = a[r][c] * inv % p;
            for (std::size_t x = c; x < cols; ++x)
                if (a[rank][x] != 0) a[r][x] = static_cast<std::uint32_t>((a[r][x] + p - f * a[rank][x] % p) % p);
        }
        ++rank;
    }
    return rank;
}

/// Clears denominators column by column.
inline DenseMatrix<mpz_class> integral_columns(const DenseMatrix<mpq_class>& a, std::size_t cols) {
    DenseMatrix<mpz_class> out(a.size(), std::vector<mpz_class>(cols));
    for (std::size_t j = 0; j < cols; ++j) {
        mpz_class l = 1;
        for (const auto& row : a) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), row[j].get_den_mpz_t());
        for (std::size_t i = 0; i < a.size(); ++i) out[i][j] = a[i][j].get_num() * (l / a[i][j].get_den());
    }
    return out;
}

inline bool small_integer(const mpz_class& v) { return v.fits_slong_p(); }
inline bool small_integer(const mpq_class& v) { return v.get_den() == 1 && v.get_num().fits_slong_p(); }
inline std::int64_t to_int64(const mpz_class& v) { return v.get_si(); }
inline std::int64_t to_int64(const mpq_class& v) { return v.get_num().get_si(); }

/// Invariant factors of an integral block held in int64; nullopt on overflow.
inline std::optional<std::vector<mpz_class>> small_invariant_factors(DenseMatrix<std::int64_t> a, std::size_t cols,
                                                                     bool verify) {
    try {
        auto f = smith_normal_form(a, cols, verify);
        if (verify && !verify_smith(a, cols, f)) throw Error("Smith normal form verification failed");
        std::vector<mpz_class> out;
        for (auto d : f.diagonal) out.emplace_back(static_cast<long>(d));
        return out;
    } catch (const Overflow&) {
        return std::nullopt;
    }
}

template <CoefficientDomain D>
void reduce_block(const SparseSlice<D>& s, const Block& b, const D& k, bool verify, SliceRank& out) {
    using V = typename D::value_type;
    const std::size_t cols = b.cols.size();
    if constexpr (std::is_same_v<D, PrimeField>) {
        (void)k;
        out.rank += rank_mod_p(block_matrix<std::uint32_t>(s, b, [](std::uint32_t v) { return v; }), cols, k);
    } else {
        // Rank over Q needs no certificate; over Z the factors are kept.
        const bool integral = std::is_same_v<D, Integers>;
        const bool track = integral && verify;
        std::optional<std::vector<mpz_class>> factors;
        bool small = true;
        for (std::size_t j = 0; j < cols && small; ++j)
            s.for_column(b.cols[j], [&](std::uint32_t, const V& v) { small = small && small_integer(v); });
        if (small)
            factors = small_invariant_factors(
                block_matrix<std::int64_t>(s, b, [](const V& v) { return to_int64(v); }), cols, track);
        if (!factors) {
            auto a = block_matrix<V>(s, b, [](const V& v) { return v; });
            if constexpr (std::is_same_v<D, Integers>)
                factors = invariant_factors(a, cols, track);
            else
                factors = invariant_factors(integral_columns(a, cols), cols, false);
        }
        for (auto& f : *factors) {
            ++out.rank;
            if (integral && f != 1) out.torsion.push_back(f);
        }
    }
}

}  // namespace detail

/// Rank (and over Z the nontrivial invariant factors) of a slice, block by
/// block. With `verify`, every integral Smith form is checked by
/// multiplying out U * A * V.
template <CoefficientDomain D>
SliceRank slice_rank(const SparseSlice<D>& s, const D& k, bool verify = true) {
    SliceRank out;
    for (const auto& b : connected_blocks(s)) {
        ++out.blocks;
        out.largest_block = std::max(out.largest_block, std::max(b.rows.size(), b.cols.size()));
        detail::reduce_block(s, b, k, verify, out);
    }
    std::sort(out.torsion.begin(), out.torsion.end());
    return out;
}

// ---------------------------------------------------------------------------
// Cohomology

struct DegreewiseEntry {
    long degree = 0;
    std::size_t position = 0;
    /// Dimension over a field, free rank over Z.
    std::int64_t rank = 0;
    std::vector<mpz_class> torsion;
};

struct DegreewiseReport {
    std::string coefficients;
    long min_degree = 0;
    long max_degree = 0;
    std::size_t positions = 0;
    std::vector<DegreewiseEntry> entries;  // degree-major, then position

    const DegreewiseEntry& at(long d, std::size_t p) const {
        if (d < min_degree || d > max_degree || p >= positions) throw Error("degreewise report: out of range");
        return entries.at(static_cast<std::size_t>(d - min_degree) * positions + p);
    }
    std::int64_t rank(long d, std::size_t p) const {
        if (d < min_degree || d > max_degree) return 0;
        return at(d, p).rank;
    }
    /// Dimensions of H at position p for degrees lo..hi.
    HilbertFunction hilbert_function(std::size_t p, long lo, long hi) const {
        HilbertFunction h{lo, {}};
        for (long d = lo; d <= hi; ++d) h.values.push_back(rank(d, p));
        return h;
    }
    /// Summed over positions.
    HilbertFunction total_hilbert_function(long lo, long hi) const {
        HilbertFunction h{lo, {}};
        for (long d = lo; d <= hi; ++d) {
            std::int64_t v = 0;
            for (std::size_t p = 0; p < positions; ++p) v += rank(d, p);
            h.values.push_back(v);
        }
        return h;
    }
    bool torsion_free() const {
        return std::all_of(entries.begin(), entries.end(), [](const auto& e) { return e.torsion.empty(); });
    }
};

/// H at every position for degrees min_degree..max_degree. Slices for
/// distinct (position, degree) pairs run on the worker pool; the report does
/// not depend on the number of workers.
struct DegreeRange {
    long lo = 0;
    long hi = 0;
};

template <CoefficientDomain D>
DegreewiseReport degreewise_cohomology(const CochainComplex<D>& c, DegreeRange range, unsigned jobs = 0,
                                       bool verify = true) {
    const long min_degree = range.lo, max_degree = range.hi;
    const D& k = c.ring()->coeffs();
    const std::size_t P = c.length();
    const long lo = min_degree - 1;
    const std::size_t span = max_degree >= lo ? static_cast<std::size_t>(max_degree - lo + 1) : 0;
    // ranks[(d - lo) * P + p]: slice of the differential leaving p at degree d.
    std::vector<SliceRank> ranks(span * P);
    std::vector<std::size_t> dims(span * P);
    parallel_for(span * P, jobs, [&](std::size_t idx) {
        const long d = lo + static_cast<long>(idx / P);
        const std::size_t p = idx % P;
        dims[idx] = DegreeBasis(c.term(p), d).size();
        if (c.differential(p) == nullptr || c.differential(p)->is_zero()) return;
        ranks[idx] = slice_rank(slice_matrix(*c.differential(p), d), k, verify);
    });
    DegreewiseReport rep;
    rep.coefficients = k.descriptor().name();
    rep.min_degree = min_degree;
    rep.max_degree = max_degree;
    rep.positions = P;
    for (long d = min_degree; d <= max_degree; ++d)
        for (std::size_t p = 0; p < P; ++p) {
            const std::size_t idx = static_cast<std::size_t>(d - lo) * P + p;
            DegreewiseEntry e;
            e.degree = d;
            e.position = p;
            e.rank = static_cast<std::int64_t>(dims[idx]) - static_cast<std::int64_t>(ranks[idx].rank);
            if (p > 0) {
                const auto& in = ranks[idx - P - 1];
                e.rank -= static_cast<std::int64_t>(in.rank);
                e.torsion = in.torsion;
            }
            rep.entries.push_back(std::move(e));
        }
    return rep;
}

template <CoefficientDomain D>
DegreewiseReport degreewise_cohomology(const CochainComplex<D>& c, long max_degree, unsigned jobs = 0) {
    return degreewise_cohomology(c, DegreeRange{std::min(0L, c.min_shift()), max_degree}, jobs);
}

/// dim H at degree d for every position.
template <FieldDomain D>
std::vector<std::int64_t> cohomology_at_degree_field(const CochainComplex<D>& c, long d) {
    auto rep = degreewise_cohomology(c, DegreeRange{d, d}, 1);
    std::vector<std::int64_t> out;
    for (const auto& e : rep.entries) out.push_back(e.rank);
    return out;
}

struct IntegralGroup {
    std::int64_t rank = 0;
    std::vector<mpz_class> torsion;

    std::string to_string() const {
        std::string s = "Z^" + std::to_string(rank);
        for (const auto& t : torsion) s += " + Z/" + t.get_str();
        return s;
    }
};

inline std::vector<IntegralGroup> cohomology_at_degree_integer(const CochainComplex<Integers>& c, long d) {
    auto rep = degreewise_cohomology(c, DegreeRange{d, d}, 1);
    std::vector<IntegralGroup> out;
    for (const auto& e : rep.entries) out.push_back({e.rank, e.torsion});
    return out;
}

struct ExactnessReport {
    bool exact = true;
    /// (degree, position, rank, torsion) wherever H is nonzero.
    std::vector<DegreewiseEntry> nonzero;
};

template <CoefficientDomain D>
ExactnessReport check_exactness(const CochainComplex<D>& c, const std::vector<std::size_t>& positions, long max_degree,
                                unsigned jobs = 0) {
    auto rep = degreewise_cohomology(c, max_degree, jobs);
    ExactnessReport out;
    for (const auto& e : rep.entries) {
        if (std::find(positions.begin(), positions.end(), e.position) == positions.end()) continue;
        if (e.rank != 0 || !e.torsion.empty()) {
            out.exact = false;
            out.nonzero.push_back(e);
        }
    }
    return out;
}

}  // namespace eqcoh
