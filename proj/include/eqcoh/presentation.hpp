#pragma once

// Finitely generated graded modules given as cokernels of homogeneous
// matrices, and the structure computations over a field built on module
// Groebner bases: kernels, lifting, minimal presentations, free resolutions,
// rank, freeness and torsion-freeness.

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "eqcoh/graded.hpp"
#include "eqcoh/groebner.hpp"
#include "eqcoh/hilbert.hpp"

namespace eqcoh {

/// coker(relations : F1 -> F0). Relations are stored with map degree 0; a
/// map of another degree is absorbed into the relation shifts.
template <CoefficientDomain D>
class ModulePresentation {
public:
    ModulePresentation(GradedFreeModule<D> generators, GradedMap<D> relations)
        : gens_(std::move(generators)), rels_(normalize(std::move(relations))) {
        if (!(rels_.target() == gens_)) throw Error("relations do not map into the generators");
    }

    /// Free module on the given generators.
    explicit ModulePresentation(GradedFreeModule<D> generators)
        : gens_(generators), rels_(GradedFreeModule<D>(generators.ring(), {}), generators, 0) {}

    const RingPtr<D>& ring() const noexcept { return gens_.ring(); }
    const GradedFreeModule<D>& generators() const noexcept { return gens_; }
    const GradedMap<D>& relations() const noexcept { return rels_; }
    std::size_t num_generators() const noexcept { return gens_.rank(); }
    std::size_t num_relations() const noexcept { return rels_.cols(); }
    bool is_minimal() const noexcept { return minimal_; }

    /// Set by minimal_presentation so repeated calls are free.
    void mark_minimal() noexcept { minimal_ = true; }

private:
    static GradedMap<D> normalize(GradedMap<D> r) {
        if (r.map_degree() == 0) return validate_graded_map(std::move(r));
        auto src = r.source().shifted(r.map_degree());
        return make_graded_map(std::move(src), r.target(), r.entries(), 0);
    }

    GradedFreeModule<D> gens_;
    GradedMap<D> rels_;
    bool minimal_ = false;
};

template <CoefficientDomain D>
ModulePresentation<D> zero_module(RingPtr<D> ring) {
    return ModulePresentation<D>(GradedFreeModule<D>(std::move(ring), {}));
}

template <CoefficientDomain D>
ModulePresentation<D> direct_sum(const std::vector<ModulePresentation<D>>& parts, RingPtr<D> ring) {
    std::vector<GradedFreeModule<D>> gens;
    std::vector<GradedMap<D>> rels;
    for (const auto& p : parts) {
        if (!same_ring(p.ring(), ring)) throw RingMismatch("direct sum of presentations over different rings");
        gens.push_back(p.generators());
        rels.push_back(p.relations());
    }
    return ModulePresentation<D>(direct_sum(gens, ring), direct_sum(rels, ring, 0));
}

/// Extension of scalars to a ring with one more variable.
template <CoefficientDomain D>
ModulePresentation<D> add_trivial_variable(const ModulePresentation<D>& m) {
    const auto& old = *m.ring();
    auto ring = make_ring(old.coeffs(), old.num_vars() + 1, old.var_weight(), old.order());
    GradedFreeModule<D> gens(ring, m.generators().shifts());
    GradedFreeModule<D> src(ring, m.relations().source().shifts());
    typename GradedMap<D>::Matrix entries;
    for (const auto& row : m.relations().entries()) {
        entries.emplace_back();
        for (const auto& e : row) entries.back().push_back(e.in_ring(ring));
    }
    return ModulePresentation<D>(gens, make_graded_map(src, gens, std::move(entries), 0));
}

// ---------------------------------------------------------------------------
// Hilbert data

template <FieldDomain D>
gb::GroebnerBasis<D> image_basis(const GradedMap<D>& m, gb::Options opts = {}) {
    gb::FreeSpace<D> space(m.ring(), m.target().shifts());
    std::vector<gb::Vec<D>> cols;
    cols.reserve(m.cols());
    for (std::size_t j = 0; j < m.cols(); ++j) cols.push_back(gb::column_vec(space, m, j));
    return gb::GroebnerBasis<D>(std::move(space), std::move(cols), opts);
}

/// Closed-form Hilbert series of F / U from a Groebner basis of U.
template <FieldDomain D>
HilbertSeries quotient_hilbert_series(const gb::GroebnerBasis<D>& basis) {
    const auto& ring = *basis.space().ring();
    LaurentPoly num;
    for (std::uint32_t c = 0; c < basis.space().rank(); ++c)
        num += monomial_ideal_numerator(basis.leading_monomials(c), ring.var_weight()).shifted(basis.space().shifts()[c]);
    return {num, ring.num_vars(), ring.var_weight()};
}

template <FieldDomain D>
HilbertSeries hilbert_series(const ModulePresentation<D>& m) {
    return quotient_hilbert_series(image_basis(m.relations()));
}

/// Truncated Hilbert function by counting standard monomials degree by degree.
template <FieldDomain D>
HilbertFunction hilbert_function(const ModulePresentation<D>& m, long lo, long hi) {
    auto basis = image_basis(m.relations());
    const auto& ring = *m.ring();
    const long w = ring.var_weight();
    HilbertFunction h{lo, {}};
    for (long d = lo; d <= hi; ++d) {
        std::int64_t total = 0;
        for (std::uint32_t c = 0; c < m.num_generators(); ++c) {
            long rest = d - m.generators().shift(c);
            if (rest < 0 || rest % w != 0) continue;
            total += count_standard_monomials(basis.leading_monomials(c), ring.num_vars(), static_cast<unsigned>(rest / w));
        }
        h.values.push_back(total);
    }
    return h;
}

// ---------------------------------------------------------------------------
// Kernels and lifting

namespace detail {

/// Augmented Groebner basis of the graph {(b_j, e_j)}: the first `rows`
/// components hold the target, the rest track representations.
template <FieldDomain D>
gb::GroebnerBasis<D> graph_basis(const GradedMap<D>& b) {
    std::vector<long> shifts = b.target().shifts();
    for (long s : b.source().shifts()) shifts.push_back(s + b.map_degree());
    gb::FreeSpace<D> space(b.ring(), shifts);
    std::vector<gb::Vec<D>> gens;
    gens.reserve(b.cols());
    const auto one = b.ring()->coeffs().one();
    for (std::size_t j = 0; j < b.cols(); ++j) {
        auto v = gb::column_vec(space, b, j);
        v.push_back({Monomial{}, static_cast<std::uint32_t>(b.rows() + j), one});
        gens.push_back(space.normalize(std::move(v)));
    }
    return gb::GroebnerBasis<D>(std::move(space), std::move(gens), gb::Options{false, false});
}

/// Matrix whose columns are `vecs` (elements of `target`), from a free module
/// whose shifts are the vectors' degrees.
template <FieldDomain D>
GradedMap<D> columns_map(const GradedFreeModule<D>& target, const std::vector<gb::Vec<D>>& vecs,
                         const std::vector<long>& degrees) {
    GradedFreeModule<D> src(target.ring(), degrees);
    GradedMap<D> m(src, target, 0);
    for (std::size_t j = 0; j < vecs.size(); ++j) {
        auto comps = gb::vec_components(target.ring(), vecs[j], 0, target.rank());
        for (std::size_t i = 0; i < comps.size(); ++i)
            if (!comps[i].is_zero()) m.set(i, j, std::move(comps[i]));
    }
    return validate_graded_map(std::move(m));
}

}  // namespace detail

/// Minimal generators of the submodule spanned by the columns of m, as a map
/// (degree 0) from a free module on those generators into m's target.
template <FieldDomain D>
GradedMap<D> minimal_generators(const GradedMap<D>& m) {
    gb::FreeSpace<D> space(m.ring(), m.target().shifts());
    std::vector<gb::Vec<D>> cols;
    std::vector<long> degs;
    for (std::size_t j = 0; j < m.cols(); ++j) {
        cols.push_back(gb::column_vec(space, m, j));
        degs.push_back(m.source().shift(j) + m.map_degree());
    }
    gb::GroebnerBasis<D> basis(space, cols, gb::Options{true, false});
    std::vector<gb::Vec<D>> keep;
    std::vector<long> keep_degs;
    for (std::size_t j : basis.minimal_inputs()) {
        keep.push_back(cols[j]);
        keep_degs.push_back(degs[j]);
    }
    return detail::columns_map(m.target(), keep, keep_degs);
}

/// Minimal homogeneous generators of ker b, as a map of degree 0 into b's source.
template <FieldDomain D>
GradedMap<D> kernel_generators(const GradedMap<D>& b) {
    if (b.cols() == 0) return GradedMap<D>(GradedFreeModule<D>(b.ring(), {}), b.source(), 0);
    auto graph = detail::graph_basis(b);
    const auto rows = static_cast<std::uint32_t>(b.rows());
    gb::FreeSpace<D> src_space(b.ring(), b.source().shifts());
    std::vector<gb::Vec<D>> syz;
    std::vector<long> degs;
    for (const auto& g : graph.elements()) {
        if (g.front().comp < rows) continue;
        gb::Vec<D> v;
        for (const auto& t : g) v.push_back({t.mon, t.comp - rows, t.coeff});
        degs.push_back(src_space.degree(v));
        syz.push_back(std::move(v));
    }
    auto all = detail::columns_map(b.source(), syz, degs);
    return minimal_generators(all);
}

/// Solves k * c = y for every column y of `targets`; throws if some column
/// is not in the image of k. The result maps targets' source (shifted by its
/// map degree) into k's source.
template <FieldDomain D>
GradedMap<D> lift(const GradedMap<D>& k, const GradedMap<D>& targets) {
    if (!(targets.target() == k.target())) throw Error("lift: targets live in a different module");
    auto src = targets.source().shifted(targets.map_degree() - k.map_degree());
    GradedMap<D> out(src, k.source(), 0);
    if (targets.cols() == 0) return out;
    auto graph = detail::graph_basis(k);
    const auto& space = graph.space();
    const auto rows = static_cast<std::uint32_t>(k.rows());
    for (std::size_t j = 0; j < targets.cols(); ++j) {
        auto y = gb::column_vec(space, targets, j);
        auto r = graph.reduce_leading_below(std::move(y), rows);
        if (!r.empty() && r.front().comp < rows)
            throw Error("lift: column " + std::to_string(j) + " is not in the image");
        auto coeffs = gb::vec_components(k.ring(), r, rows, k.cols());
        for (std::size_t i = 0; i < coeffs.size(); ++i)
            if (!coeffs[i].is_zero()) out.set(i, j, -coeffs[i]);
    }
    return validate_graded_map(std::move(out));
}

/// Membership of a vector (as component polynomials) in the image of m.
template <FieldDomain D>
bool in_image(const GradedMap<D>& m, const std::vector<Polynomial<D>>& v) {
    auto basis = image_basis(m);
    gb::Vec<D> x;
    for (std::size_t i = 0; i < v.size(); ++i)
        for (const auto& t : v[i].terms()) x.push_back({t.mon, static_cast<std::uint32_t>(i), t.coeff});
    return basis.contains(basis.space().normalize(std::move(x)));
}

// ---------------------------------------------------------------------------
// Minimal presentations and resolutions

/// Removes generators killed by relations with a unit entry, then keeps a
/// minimal subset of the relations. Idempotent; preserves the module.
template <FieldDomain D>
ModulePresentation<D> minimal_presentation(const ModulePresentation<D>& m) {
    if (m.is_minimal()) return m;
    const auto& ring = m.ring();
    const D& K = ring->coeffs();
    std::vector<long> gen_shifts = m.generators().shifts();
    // Relations as columns.
    std::vector<std::vector<Polynomial<D>>> cols;
    std::vector<long> col_deg;
    for (std::size_t j = 0; j < m.num_relations(); ++j) {
        auto c = m.relations().column(j);
        bool zero = std::all_of(c.begin(), c.end(), [](const auto& p) { return p.is_zero(); });
        if (zero) continue;
        cols.push_back(std::move(c));
        col_deg.push_back(m.relations().source().shift(j));
    }

    for (;;) {
        std::size_t pc = cols.size(), pr = 0;
        for (std::size_t j = 0; j < cols.size() && pc == cols.size(); ++j)
            for (std::size_t i = 0; i < cols[j].size(); ++i) {
                const auto& e = cols[j][i];
                if (!e.is_zero() && e.size() == 1 && e.leading().mon.is_one()) {
                    pc = j;
                    pr = i;
                    break;
                }
            }
        if (pc == cols.size()) break;
        const auto pivot_inv = K.inv(cols[pc][pr].leading().coeff);
        const auto pivot = cols[pc];
        for (std::size_t j = 0; j < cols.size(); ++j) {
            if (j == pc || cols[j][pr].is_zero()) continue;
            auto factor = cols[j][pr].scaled(pivot_inv);
            for (std::size_t i = 0; i < cols[j].size(); ++i)
                if (!pivot[i].is_zero()) cols[j][i] -= factor * pivot[i];
        }
        cols.erase(cols.begin() + static_cast<std::ptrdiff_t>(pc));
        col_deg.erase(col_deg.begin() + static_cast<std::ptrdiff_t>(pc));
        for (auto& c : cols) c.erase(c.begin() + static_cast<std::ptrdiff_t>(pr));
        gen_shifts.erase(gen_shifts.begin() + static_cast<std::ptrdiff_t>(pr));
        std::vector<std::vector<Polynomial<D>>> nonzero;
        std::vector<long> nonzero_deg;
        for (std::size_t j = 0; j < cols.size(); ++j)
            if (std::any_of(cols[j].begin(), cols[j].end(), [](const auto& p) { return !p.is_zero(); })) {
                nonzero.push_back(std::move(cols[j]));
                nonzero_deg.push_back(col_deg[j]);
            }
        cols = std::move(nonzero);
        col_deg = std::move(nonzero_deg);
    }

    GradedFreeModule<D> gens(ring, gen_shifts);
    typename GradedMap<D>::Matrix entries(gen_shifts.size());
    for (std::size_t i = 0; i < gen_shifts.size(); ++i)
        for (std::size_t j = 0; j < cols.size(); ++j) entries[i].push_back(cols[j][i]);
    auto rels = make_graded_map(GradedFreeModule<D>(ring, col_deg), gens, std::move(entries), 0);
    ModulePresentation<D> out(gens, minimal_generators(rels));
    out.mark_minimal();
    return out;
}

/// beta_{i,d}: rows indexed by homological degree, each a degree -> count map.
struct GradedBettiTable {
    std::vector<std::map<long, std::size_t>> rows;

    std::size_t total(std::size_t i) const {
        if (i >= rows.size()) return 0;
        std::size_t s = 0;
        for (auto [d, c] : rows[i]) s += c;
        return s;
    }
    std::size_t length() const noexcept { return rows.size(); }

    void add_row_entries(std::size_t i, const std::vector<long>& degrees) {
        if (rows.size() <= i) rows.resize(i + 1);
        for (long d : degrees) ++rows[i][d];
    }
    GradedBettiTable& operator+=(const GradedBettiTable& o) {
        if (rows.size() < o.rows.size()) rows.resize(o.rows.size());
        for (std::size_t i = 0; i < o.rows.size(); ++i)
            for (auto [d, c] : o.rows[i]) rows[i][d] += c;
        trim();
        return *this;
    }
    void trim() {
        while (!rows.empty() && rows.back().empty()) rows.pop_back();
    }
    friend bool operator==(GradedBettiTable a, GradedBettiTable b) {
        a.trim();
        b.trim();
        return a.rows == b.rows;
    }
    std::string to_string() const {
        std::string s;
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (i) s += "; ";
            s += "beta_" + std::to_string(i) + ":";
            for (auto [d, c] : rows[i]) s += " " + std::to_string(c) + "@" + std::to_string(d);
        }
        return s.empty() ? "0" : s;
    }
};

/// Full minimal free resolution by iterated minimal syzygies.
template <FieldDomain D>
GradedBettiTable betti_table(const ModulePresentation<D>& m) {
    auto mp = minimal_presentation(m);
    GradedBettiTable t;
    if (mp.num_generators() == 0) return t;
    t.add_row_entries(0, mp.generators().shifts());
    GradedMap<D> current = mp.relations();
    std::size_t i = 1;
    while (current.cols() > 0) {
        t.add_row_entries(i, current.source().shifts());
        current = kernel_generators(current);
        ++i;
        if (i > m.ring()->num_vars() + 1) throw Error("resolution longer than the number of variables");
    }
    return t;
}

template <FieldDomain D>
std::int64_t rank_of_module(const ModulePresentation<D>& m) {
    auto t = betti_table(m);
    std::int64_t r = 0;
    for (std::size_t i = 0; i < t.length(); ++i) r += (i % 2 == 0 ? 1 : -1) * static_cast<std::int64_t>(t.total(i));
    return r;
}

template <FieldDomain D>
bool is_free(const ModulePresentation<D>& m) {
    return minimal_presentation(m).num_relations() == 0;
}

template <CoefficientDomain D>
struct TorsionReport {
    bool torsion_free = true;
    /// A torsion element (coordinates on the generators of the minimal
    /// presentation) and a nonzero ring element annihilating it.
    std::vector<Polynomial<D>> witness;
    std::optional<Polynomial<D>> annihilator;
    /// Generator counts of Hom(M, R) and Hom(Hom(M, R), R).
    std::size_t dual_generators = 0;
    std::size_t bidual_generators = 0;
};

/// Torsion-freeness through the kernel of M -> M**: with M = coker(A),
/// M* = ker(A^T) generated by the columns of K, M* = coker(S) with S the
/// syzygies of K, M** = ker(S^T), and the canonical map is K^T.
template <FieldDomain D>
TorsionReport<D> is_torsion_free(const ModulePresentation<D>& m) {
    auto mp = minimal_presentation(m);
    TorsionReport<D> rep;
    const auto& A = mp.relations();
    if (A.cols() == 0) {
        rep.dual_generators = rep.bidual_generators = mp.num_generators();
        return rep;
    }
    auto At = graded_transpose(A, 0);
    auto K = kernel_generators(At);            // G -> F0*
    auto S = kernel_generators(K);             // syzygies of the dual's generators
    auto bidual = kernel_generators(graded_transpose(S, 0));
    rep.dual_generators = K.cols();
    rep.bidual_generators = bidual.cols();

    GradedMap<D> L = K.cols() == 0 ? GradedMap<D>(A.target(), A.target(), 0) : kernel_generators(graded_transpose(K, 0));
    if (K.cols() == 0)
        for (std::size_t i = 0; i < A.target().rank(); ++i) L.set(i, i, Polynomial<D>::constant(m.ring(), 1));

    auto image = image_basis(A);
    for (std::size_t j = 0; j < L.cols(); ++j) {
        auto x = gb::column_vec(image.space(), L, j);
        if (image.contains(x)) continue;
        rep.torsion_free = false;
        rep.witness = L.column(j);
        // ann(x) = first coordinates of syz(x | A).
        std::vector<long> shifts{L.source().shift(j)};
        shifts.insert(shifts.end(), A.source().shifts().begin(), A.source().shifts().end());
        GradedMap<D> xa(GradedFreeModule<D>(m.ring(), shifts), A.target(), 0);
        for (std::size_t i = 0; i < A.rows(); ++i) {
            if (!rep.witness[i].is_zero()) xa.set(i, 0, rep.witness[i]);
            for (std::size_t k = 0; k < A.cols(); ++k)
                if (!A.entry(i, k).is_zero()) xa.set(i, k + 1, A.entry(i, k));
        }
        auto syz = kernel_generators(validate_graded_map(std::move(xa)));
        for (std::size_t k = 0; k < syz.cols(); ++k)
            if (!syz.entry(0, k).is_zero()) {
                rep.annihilator = syz.entry(0, k);
                break;
            }
        break;
    }
    return rep;
}

enum class ModuleClass { Free, TorsionFreeNotFree, HasTorsion };

inline std::string to_string(ModuleClass c) {
    switch (c) {
        case ModuleClass::Free: return "free";
        case ModuleClass::TorsionFreeNotFree: return "torsion_free_not_free";
        case ModuleClass::HasTorsion: return "has_torsion";
    }
    return "?";
}

template <FieldDomain D>
ModuleClass classify_module(const ModulePresentation<D>& m) {
    if (is_free(m)) return ModuleClass::Free;
    return is_torsion_free(m).torsion_free ? ModuleClass::TorsionFreeNotFree : ModuleClass::HasTorsion;
}

}  // namespace eqcoh
