#pragma once

// Constructors for the complexes studied here: Koszul complexes, the
// stretched Koszul ("mutant") complexes with decoupled end summands, the
// literal three-variable example, and the doubling of a presentation.
// Also the Poincare polynomials of the spaces X_r, Y_r, Z_r.

#include <optional>
#include <unordered_map>
#include <string>
#include <vector>

#include "eqcoh/decomposition.hpp"
#include "eqcoh/exterior.hpp"
#include "eqcoh/graded.hpp"
#include "eqcoh/group_algebra.hpp"
#include "eqcoh/presentation.hpp"

namespace eqcoh {

// ---------------------------------------------------------------------------
// Koszul complexes

namespace detail {

/// Contraction Lambda^k (x) R -> Lambda^{k-1} (x) R against (t_1, ..., t_n),
/// on the sorted subset bases.
template <CoefficientDomain D>
GradedMap<D> contraction_map(const RingPtr<D>& ring, int k, const GradedFreeModule<D>& src,
                             const GradedFreeModule<D>& tgt) {
    const int n = static_cast<int>(ring->num_vars());
    auto cols = subsets_of_size(n, k);
    auto rows = subsets_of_size(n, k - 1);
    std::unordered_map<Subset, std::size_t> row_index;
    for (std::size_t i = 0; i < rows.size(); ++i) row_index.emplace(rows[i], i);
    GradedMap<D> m(src, tgt, 1);
    for (std::size_t j = 0; j < cols.size(); ++j)
        for (int i = 0; i < n; ++i) {
            if (!(cols[j] & (Subset{1} << i))) continue;
            Subset rest = cols[j] & ~(Subset{1} << i);
            auto row = row_index.at(rest);
            auto t = Polynomial<D>::variable(ring, static_cast<std::size_t>(i));
            m.set(row, j, contraction_sign(cols[j], i) > 0 ? t : -t);
        }
    return validate_graded_map(std::move(m));
}

}  // namespace detail

/// Position of subset s in subsets_of_size(n, |s|).
inline std::size_t subset_index(Subset s, int n) {
    auto list = subsets_of_size(n, subset_size(s));
    return static_cast<std::size_t>(std::find(list.begin(), list.end(), s) - list.begin());
}

/// K(n): terms Lambda^n, ..., Lambda^0 over R = k[t_1..t_n], the degree-k
/// stratum at shift k (w - 1), differential the contraction.
template <CoefficientDomain D>
CochainComplex<D> koszul_complex(int n, int w, const D& coeffs) {
    if (n < 1 || n > static_cast<int>(kMaxVars)) throw InvalidSpec("Koszul complex needs 1 <= n <= 16");
    if (w < 1) throw InvalidSpec("variable weight must be positive");
    auto ring = make_ring(coeffs, static_cast<std::size_t>(n), w);
    const int e = w - 1;
    std::vector<GradedFreeModule<D>> terms;
    std::vector<std::string> labels;
    for (int k = n; k >= 0; --k) {
        terms.emplace_back(ring, std::vector<long>(static_cast<std::size_t>(binomial(n, k)), static_cast<long>(k) * e));
        labels.push_back("L" + std::to_string(k));
    }
    std::vector<GradedMap<D>> diffs;
    for (int k = n; k >= 1; --k) {
        std::size_t p = static_cast<std::size_t>(n - k);
        diffs.push_back(detail::contraction_map(ring, k, terms[p], terms[p + 1]));
    }
    return build_complex(std::move(terms), std::move(diffs), std::move(labels), true);
}

// ---------------------------------------------------------------------------
// Mutant complexes

enum class MutantVariant { Torus, TwoTorus, Example33 };

inline std::string to_string(MutantVariant v) {
    switch (v) {
        case MutantVariant::Torus: return "torus";
        case MutantVariant::TwoTorus: return "two_torus";
        case MutantVariant::Example33: return "example_3_3";
    }
    return "?";
}

/// A stretched Koszul complex: R[0], the exterior strata r, ..., 1 of
/// n = r + 1 generators at shifts base + k e, and R[top].
struct MutantSpec {
    MutantVariant variant = MutantVariant::Torus;
    int r = 2;
    int w = 2;
    int e = 1;
    long base = 0;
    long top = 0;
    /// Permit any r >= 1 for the geometric variants.
    bool algebraic = false;

    static MutantSpec make(MutantVariant v, int r, bool algebraic = false) {
        MutantSpec s;
        s.variant = v;
        s.r = r;
        s.algebraic = algebraic;
        switch (v) {
            case MutantVariant::Torus:
                s.w = 2, s.e = 1, s.base = r, s.top = 3L * r + 1;
                break;
            case MutantVariant::TwoTorus:
                s.w = 1, s.e = 0, s.base = r, s.top = 2L * r;
                break;
            case MutantVariant::Example33:
                s.w = 2, s.e = 1, s.base = 0, s.top = 3;
                break;
        }
        s.validate();
        return s;
    }

    int n() const { return r + 1; }
    long slice_shift(int k) const { return base + static_cast<long>(k) * e; }

    void validate() const {
        if (w - e != 1) throw InvalidSpec("variable weight minus generator weight must be 1");
        if (variant == MutantVariant::Example33) {
            if (r != 2) throw InvalidSpec("the three-variable example has r = 2");
        } else if (!algebraic && r != 1 && r != 2 && r != 4 && r != 8) {
            throw InvalidSpec("r must be 1, 2, 4 or 8, got " + std::to_string(r));
        }
        if (r < 1 || n() > static_cast<int>(kMaxVars)) throw InvalidSpec("r out of range");
    }

    std::string name() const {
        switch (variant) {
            case MutantVariant::Torus: return "mutant-torus r=" + std::to_string(r);
            case MutantVariant::TwoTorus: return "mutant-2torus r=" + std::to_string(r);
            case MutantVariant::Example33: return "example-3-3";
        }
        return "?";
    }
};

/// Where the interesting pieces of a built model live, for verification.
template <CoefficientDomain D>
struct BuiltModel {
    BuiltModel(std::string n, CochainComplex<D> c) : name(std::move(n)), complex(std::move(c)) {}

    std::string name;
    CochainComplex<D> complex;
    /// Position whose cohomology is the kernel of the top stratum map, and
    /// the expected kernel generator there (on the term's basis).
    std::size_t kernel_position = 0;
    std::vector<Polynomial<D>> kernel_element;
    long kernel_degree = 0;
    /// Position whose cohomology should be a shifted maximal ideal, with the
    /// images x_i -> t_i of its generators.
    std::optional<std::size_t> ideal_position;
    std::vector<Polynomial<D>> ideal_images;
    long ideal_shift = 0;
};

namespace detail {

/// Matrix of the cohomology action on the dual u-basis over F_2: column
/// u_S^* (|S| = k) has entry sum_i t_i <u_S^*, (1 - g_i) u_T> in row u_T^*
/// (|T| = k - 1). Products are taken in the integral group ring and then
/// rewritten on the u-basis mod 2.
template <CoefficientDomain D>
GradedMap<D> group_algebra_action(const RingPtr<D>& ring, int k, const GradedFreeModule<D>& src,
                                  const GradedFreeModule<D>& tgt) {
    const int n = static_cast<int>(ring->num_vars());
    auto cols = subsets_of_size(n, k);
    auto rows = subsets_of_size(n, k - 1);
    GradedMap<D> m(src, tgt, 1);
    for (std::size_t row = 0; row < rows.size(); ++row) {
        auto ut = u_basis_element(n, rows[row]);
        for (int i = 0; i < n; ++i) {
            auto prod = (GroupAlgebraElement::identity(n) - GroupAlgebraElement::generator(n, i)) * ut;
            for (const auto& entry : to_u_basis_mod2(prod)) {
                const Subset s = entry.first;
                if (subset_size(s) != k) continue;
                auto col = static_cast<std::size_t>(std::find(cols.begin(), cols.end(), s) - cols.begin());
                m.set(row, col, m.entry(row, col) + Polynomial<D>::variable(ring, static_cast<std::size_t>(i)));
            }
        }
    }
    return validate_graded_map(std::move(m));
}

}  // namespace detail

/// The complex R[0] -> Lambda^r -> ... -> Lambda^1 -> R[top]; the end maps
/// are zero. For the two-torus variant over F_2 the differential is built
/// from the group ring action on the u-basis; otherwise it is the signed
/// contraction.
template <CoefficientDomain D>
BuiltModel<D> mutant_complex(const MutantSpec& spec, const D& coeffs) {
    spec.validate();
    const int n = spec.n();
    auto ring = make_ring(coeffs, static_cast<std::size_t>(n), spec.w);
    std::vector<GradedFreeModule<D>> terms;
    std::vector<std::string> labels;
    terms.emplace_back(ring, std::vector<long>{0});
    labels.push_back("R");
    for (int k = spec.r; k >= 1; --k) {
        terms.emplace_back(ring, std::vector<long>(static_cast<std::size_t>(binomial(n, k)), spec.slice_shift(k)));
        labels.push_back("L" + std::to_string(k));
    }
    terms.emplace_back(ring, std::vector<long>{spec.top});
    labels.push_back("R[" + std::to_string(spec.top) + "]");

    const bool group_ring = spec.variant == MutantVariant::TwoTorus && coeffs.descriptor() == CoefficientRing{CoefficientKind::PrimeField, 2};
    std::vector<GradedMap<D>> diffs;
    diffs.emplace_back(terms[0], terms[1], 1);
    for (int k = spec.r; k >= 2; --k) {
        std::size_t p = static_cast<std::size_t>(spec.r - k + 1);
        diffs.push_back(group_ring ? detail::group_algebra_action(ring, k, terms[p], terms[p + 1])
                                   : detail::contraction_map(ring, k, terms[p], terms[p + 1]));
    }
    diffs.emplace_back(terms[terms.size() - 2], terms.back(), 1);

    BuiltModel<D> model{spec.name(), build_complex(std::move(terms), std::move(diffs), std::move(labels), true)};
    // Kernel of the top stratum map: the contraction of the full set,
    // sum_i sign t_i e_{full - i}.
    model.kernel_position = 1;
    model.kernel_degree = spec.slice_shift(spec.r) + spec.w;
    const Subset full = (Subset{1} << n) - 1;
    if (spec.r >= 2) {
        auto top = subsets_of_size(n, spec.r);
        model.kernel_element.assign(top.size(), Polynomial<D>(ring));
        for (int i = 0; i < n; ++i) {
            Subset rest = full & ~(Subset{1} << i);
            auto idx = static_cast<std::size_t>(std::find(top.begin(), top.end(), rest) - top.begin());
            auto t = Polynomial<D>::variable(ring, static_cast<std::size_t>(i));
            model.kernel_element[idx] = contraction_sign(full, i) > 0 ? t : -t;
        }
        model.ideal_position = static_cast<std::size_t>(spec.r);
        model.ideal_shift = spec.slice_shift(1) - spec.w;
        for (int i = 0; i < n; ++i) model.ideal_images.push_back(Polynomial<D>::variable(ring, static_cast<std::size_t>(i)));
    }
    return model;
}

/// The literal complex R + (R^3)[1] + (R^3)[2] + R[3] whose only nonzero
/// differential is the skew matrix B from the y-basis to the x-basis.
template <CoefficientDomain D>
BuiltModel<D> example_complex(const D& coeffs) {
    auto ring = make_ring(coeffs, 3, 2);
    auto t = [&](std::size_t i) { return Polynomial<D>::variable(ring, i); };
    GradedFreeModule<D> r0(ring, {0}), y(ring, {2, 2, 2}), x(ring, {1, 1, 1}), r3(ring, {3});
    GradedMap<D> b(y, x, 1);
    b.set(0, 1, -t(2));
    b.set(0, 2, t(1));
    b.set(1, 0, t(2));
    b.set(1, 2, -t(0));
    b.set(2, 0, -t(1));
    b.set(2, 1, t(0));
    std::vector<GradedMap<D>> diffs{GradedMap<D>(r0, y, 1), validate_graded_map(std::move(b)), GradedMap<D>(x, r3, 1)};
    BuiltModel<D> model{"example-3-3 (literal)", build_complex<D>({r0, y, x, r3}, std::move(diffs), {"R", "Y", "X", "R[3]"}, true)};
    model.kernel_position = 1;
    model.kernel_degree = 4;
    model.kernel_element = {t(0), t(1), t(2)};
    model.ideal_position = 2;
    model.ideal_shift = -1;
    model.ideal_images = {t(0), t(1), t(2)};
    return model;
}

/// Closed-form cohomology of a mutant complex.
inline DecompositionSpec expected_cohomology(const MutantSpec& spec) {
    spec.validate();
    DecompositionSpec d;
    d.num_vars = static_cast<std::size_t>(spec.n());
    d.weight = spec.w;
    const long s1 = spec.slice_shift(1), sr = spec.slice_shift(spec.r);
    if (spec.r == 1) {
        d.summands = {Summand::free(0), Summand::free(s1), Summand::free(s1), Summand::free(spec.top)};
    } else {
        d.summands = {Summand::free(0), Summand::max_ideal(s1 - spec.w), Summand::free(spec.top),
                      Summand::free(sr + spec.w)};
    }
    return d;
}

// ---------------------------------------------------------------------------
// Doubling

template <CoefficientDomain D>
struct DoublingModel {
    CochainComplex<D> complex;
    long n = 0;
    /// The presentation actually used (minimalized over fields).
    GradedMap<D> b;
    /// Positions of F1, F0, F0', F1' in the complex.
    static constexpr std::size_t kF1 = 1, kF0 = 2, kF0Dual = 3, kF1Dual = 4;
};

/// Default doubling shift: twice the largest primal shift plus w.
template <CoefficientDomain D>
long default_doubling_shift(const GradedMap<D>& b) {
    long m = 0;
    for (long s : b.target().shifts()) m = std::max(m, s);
    for (long s : b.source().shifts()) m = std::max(m, s - 1 + b.map_degree());
    return 2 * m + b.ring()->var_weight();
}

/// R -> F1 -B-> F0 -> F0' -B^T-> F1' -> R[n] with F1 placed one degree below
/// its relation degrees so that B has degree +1, and primes denoting duals
/// whose shifts add up to n with the primal ones.
template <CoefficientDomain D>
DoublingModel<D> doubling_complex(GradedMap<D> b, std::optional<long> n_opt = std::nullopt, bool allow_overlap = false) {
    if (b.map_degree() != 0)
        b = make_graded_map(b.source().shifted(b.map_degree()), b.target(), b.entries(), 0);
    if constexpr (FieldDomain<D>) {
        auto mp = minimal_presentation(ModulePresentation<D>(b.target(), b));
        b = mp.relations();
    } else {
        for (std::size_t i = 0; i < b.rows(); ++i)
            for (std::size_t j = 0; j < b.cols(); ++j)
                if (!b.ring()->coeffs().is_zero(b.entry(i, j).constant_term()))
                    throw InvalidSpec("presentation is not minimal: unit entry at (" + std::to_string(i) + ", " +
                                      std::to_string(j) + ")");
    }
    const auto& ring = b.ring();
    GradedFreeModule<D> f0 = b.target();
    GradedFreeModule<D> f1 = b.source().shifted(-1);
    auto bc = make_graded_map(f1, f0, b.entries(), 1);
    const long n = n_opt.value_or(default_doubling_shift(b));

    long max_primal = 0, min_dual = n;
    for (long s : f0.shifts()) max_primal = std::max(max_primal, s), min_dual = std::min(min_dual, n - s);
    for (long s : f1.shifts()) max_primal = std::max(max_primal, s), min_dual = std::min(min_dual, n - s);
    if (!allow_overlap && min_dual < max_primal)
        throw InvalidSpec("doubling shift n = " + std::to_string(n) + " too small: dual shift " +
                          std::to_string(min_dual) + " below primal shift " + std::to_string(max_primal));

    auto bt = graded_transpose(bc, n);
    GradedFreeModule<D> r0(ring, {0}), rn(ring, {n});
    std::vector<GradedFreeModule<D>> terms{r0, f1, f0, bt.source(), bt.target(), rn};
    std::vector<GradedMap<D>> diffs{GradedMap<D>(r0, f1, 1), bc, GradedMap<D>(f0, bt.source(), 1), bt,
                                    GradedMap<D>(bt.target(), rn, 1)};
    auto c = build_complex(std::move(terms), std::move(diffs), {"R", "F1", "F0", "F0'", "F1'", "R[n]"}, true);
    return DoublingModel<D>{std::move(c), n, std::move(b)};
}

// ---------------------------------------------------------------------------
// Poincare polynomials

enum class SpaceKind { X, Y, Z };

inline void check_geometric_r(int r) {
    if (r != 1 && r != 2 && r != 4 && r != 8) throw InvalidSpec("r must be 1, 2, 4 or 8, got " + std::to_string(r));
}

/// Rank of H_*(X_r), H_*(Y_r), H_*(Z_r) by degree. For Y only additivity
/// along the short exact sequence is used.
inline LaurentPoly homology_poincare(SpaceKind space, int r, MutantVariant variant) {
    check_geometric_r(r);
    const long n = r + 1;
    LaurentPoly one = LaurentPoly::one();
    if (variant == MutantVariant::TwoTorus) {
        const std::int64_t full = (std::int64_t{1} << n);
        switch (space) {
            case SpaceKind::X: return one + LaurentPoly::monomial(r, full - 1);
            case SpaceKind::Y:
                return LaurentPoly::monomial(2L * r - 1, full - 1) + one + LaurentPoly::monomial(r, full - 2);
            case SpaceKind::Z: return one + LaurentPoly::monomial(r, full - 2) + LaurentPoly::monomial(2L * r);
        }
    }
    if (variant != MutantVariant::Torus) throw InvalidSpec("Poincare polynomials exist for the geometric variants only");
    auto strata = [&](int lo, int hi) {
        LaurentPoly p;
        for (int k = lo; k <= hi; ++k) p.add_term(k, binomial(n, k));
        return p;
    };
    LaurentPoly vee = strata(0, r), diamond = strata(1, r);
    switch (space) {
        case SpaceKind::X: return one + vee.shifted(r);
        case SpaceKind::Y: return vee.shifted(2L * r - 1) + one + diamond.shifted(r);
        case SpaceKind::Z: return one + diamond.shifted(r) + LaurentPoly::monomial(3L * r + 1);
    }
    return {};
}

struct SphereProduct {
    std::int64_t count = 1;
    long a = 0;
    long b = 0;
};

/// Homology of a connected sum of products of spheres, each of dimension
/// total_dim: 1 + q^total_dim + sum count (q^a + q^b).
inline LaurentPoly connected_sum_poincare(const std::vector<SphereProduct>& summands, long total_dim) {
    LaurentPoly p = LaurentPoly::one() + LaurentPoly::monomial(total_dim);
    for (const auto& s : summands) {
        if (s.a + s.b != total_dim)
            throw InvalidSpec("S^" + std::to_string(s.a) + " x S^" + std::to_string(s.b) + " is not of dimension " +
                              std::to_string(total_dim));
        p.add_term(s.a, s.count);
        p.add_term(s.b, s.count);
    }
    return p;
}

/// The sum C(r+1, k) * (S^{r+k} x S^{2r+1-k}) for k = 1..r/2.
inline std::vector<SphereProduct> torus_connected_sum(int r) {
    std::vector<SphereProduct> out;
    for (int k = 1; k <= r / 2; ++k) out.push_back({binomial(r + 1, k), static_cast<long>(r + k), 2L * r + 1 - k});
    return out;
}

}  // namespace eqcoh
