#pragma once

// Verdicts: decomposition matching, explicit maps, kernel generators, the
// degree-one realizability inequality, the intersection form on the middle
// filtration quotient, and agreement between the two cohomology engines.

#include <algorithm>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "eqcoh/builders.hpp"
#include "eqcoh/cohomology.hpp"
#include "eqcoh/decomposition.hpp"
#include "eqcoh/degreewise.hpp"
#include "eqcoh/smith.hpp"

namespace eqcoh {

inline constexpr const char* kSymbolicEngine = "groebner-pot/1";
inline constexpr const char* kDegreewiseEngine = "block-smith/1";

struct Check {
    std::string name;
    bool pass = false;
    std::string details;
};

struct VerificationReport {
    std::string model;
    std::string coefficients;
    long degree_bound = 0;
    std::vector<Check> checks;
    std::vector<std::string> notes;
    /// Extra facts shown in reports (classification, series, n, ...).
    std::map<std::string, std::string> facts;
    std::optional<GradedBettiTable> betti;
    std::vector<DegreewiseReport> tables;

    void add(std::string name, bool pass, std::string details) {
        checks.push_back({std::move(name), pass, std::move(details)});
    }
    void add(Check c) { checks.push_back(std::move(c)); }
    void add(const std::vector<Check>& cs) { checks.insert(checks.end(), cs.begin(), cs.end()); }

    /// Pass iff there is at least one check and every check passes.
    bool overall() const {
        return !checks.empty() && std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.pass; });
    }
    const Check* find(const std::string& name) const {
        for (const auto& c : checks)
            if (c.name == name) return &c;
        return nullptr;
    }
};

namespace detail {

inline std::string hf_string(const HilbertFunction& h, std::size_t limit = 12) {
    std::string s = "[";
    for (std::size_t i = 0; i < h.values.size() && i < limit; ++i) {
        if (i) s += ",";
        s += std::to_string(h.values[i]);
    }
    if (h.values.size() > limit) s += ",...";
    return s + "]";
}

/// First degree where two functions over the same range differ.
inline std::optional<long> first_mismatch(const HilbertFunction& a, const HilbertFunction& b) {
    const long lo = std::min(a.start, b.start), hi = std::max(a.end(), b.end());
    for (long d = lo; d <= hi; ++d)
        if (a.at(d) != b.at(d)) return d;
    return std::nullopt;
}

inline long lowest_degree(const DecompositionSpec& spec) {
    long lo = 0;
    for (const auto& s : spec.summands) lo = std::min(lo, s.shift);
    return lo;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Decomposition matching

inline void check_match_preconditions(std::size_t num_vars, int weight, const DecompositionSpec& spec, long D) {
    if (num_vars != spec.num_vars || weight != spec.weight)
        throw RingMismatch("expected decomposition lives over a different ring");
    if (D < spec.max_generator_degree())
        throw InvalidSpec("degree bound " + std::to_string(D) + " below the largest expected generator or relation degree " +
                          std::to_string(spec.max_generator_degree()));
}

/// Hilbert function agreement for d <= D (counted from a Groebner basis,
/// compared with the closed form) and exact Betti-table equality.
template <FieldDomain D>
std::vector<Check> match_decomposition(const ModulePresentation<D>& computed, const DecompositionSpec& expected,
                                       long bound) {
    const auto& ring = *computed.ring();
    check_match_preconditions(ring.num_vars(), ring.var_weight(), expected, bound);
    std::vector<Check> out;
    long lo = detail::lowest_degree(expected);
    for (long s : computed.generators().shifts()) lo = std::min(lo, s);
    auto got = hilbert_function(computed, lo, bound);
    auto want = expected.hilbert_series().truncate(lo, bound);
    if (auto d = detail::first_mismatch(got, want))
        out.push_back({"hilbert_match", false,
                       "degree " + std::to_string(*d) + ": computed " + std::to_string(got.at(*d)) + ", expected " +
                           std::to_string(want.at(*d))});
    else
        out.push_back({"hilbert_match", true,
                       "d = " + std::to_string(lo) + ".." + std::to_string(bound) + ": " + detail::hf_string(got)});
    auto bt = betti_table(computed), et = expected.betti_table();
    out.push_back({"betti_match", bt == et,
                   bt == et ? bt.to_string() : "computed " + bt.to_string() + "; expected " + et.to_string()});
    return out;
}

/// Hilbert function agreement for d <= D from degreewise dimensions (free
/// ranks over Z), summed over positions.
inline Check match_decomposition(const DegreewiseReport& rep, std::size_t num_vars, int weight,
                                 const DecompositionSpec& expected, long bound) {
    check_match_preconditions(num_vars, weight, expected, bound);
    const long lo = std::max(rep.min_degree, std::min(detail::lowest_degree(expected), 0L));
    const long hi = std::min(bound, rep.max_degree);
    auto got = rep.total_hilbert_function(lo, hi);
    auto want = expected.hilbert_series().truncate(lo, hi);
    if (auto d = detail::first_mismatch(got, want))
        return {"hilbert_match_degreewise", false,
                rep.coefficients + " degree " + std::to_string(*d) + ": computed " + std::to_string(got.at(*d)) +
                    ", expected " + std::to_string(want.at(*d))};
    return {"hilbert_match_degreewise", true,
            rep.coefficients + " d = " + std::to_string(lo) + ".." + std::to_string(hi) + ": " + detail::hf_string(got)};
}

/// Checks that x_i -> images[i] defines an isomorphism from M onto the
/// shifted ideal generated by the images, assumed to be the maximal ideal:
/// relations go to zero, every variable lies in the image ideal, and the
/// Hilbert series of M equals that of m[shift].
template <FieldDomain D>
Check verify_explicit_map(const ModulePresentation<D>& m, const std::vector<Polynomial<D>>& images, long shift) {
    const auto& ring = m.ring();
    Check c{"explicit_iso", false, ""};
    if (images.size() != m.num_generators()) {
        c.details = std::to_string(m.num_generators()) + " generators but " + std::to_string(images.size()) + " images";
        return c;
    }
    for (std::size_t i = 0; i < images.size(); ++i) {
        const auto& p = images[i];
        if (p.is_zero() || !p.homogeneous_degree().is_homogeneous() || !ring->coeffs().is_zero(p.constant_term()) ||
            m.generators().shift(i) != shift + p.homogeneous_degree().value) {
            c.details = "image of generator " + std::to_string(i + 1) + " is not a homogeneous element of m of degree " +
                        std::to_string(m.generators().shift(i) - shift);
            return c;
        }
    }
    const auto& rel = m.relations();
    for (std::size_t j = 0; j < rel.cols(); ++j) {
        Polynomial<D> sum(ring);
        for (std::size_t i = 0; i < rel.rows(); ++i) sum = sum + images[i] * rel.entry(i, j);
        if (!sum.is_zero()) {
            c.details = "relation " + std::to_string(j + 1) + " maps to " + sum.to_string();
            return c;
        }
    }
    // Surjectivity onto m: each variable in the ideal of the images.
    std::vector<long> degs;
    for (const auto& p : images) degs.push_back(p.homogeneous_degree().value);
    GradedMap<D> row(GradedFreeModule<D>(ring, degs), GradedFreeModule<D>(ring, {0}), 0);
    for (std::size_t i = 0; i < images.size(); ++i) row.set(0, i, images[i]);
    for (std::size_t k = 0; k < ring->num_vars(); ++k)
        if (!in_image(row, {Polynomial<D>::variable(ring, k)})) {
            c.details = "t" + std::to_string(k + 1) + " is not in the image ideal";
            return c;
        }
    DecompositionSpec target{ring->num_vars(), ring->var_weight(), {Summand::max_ideal(shift)}};
    auto hs = hilbert_series(m);
    if (!(hs == target.hilbert_series())) {
        c.details = "Hilbert series " + hs.to_string() + " differs from m[" + std::to_string(shift) + "]";
        return c;
    }
    c.pass = true;
    std::string map;
    for (std::size_t i = 0; i < images.size(); ++i) {
        if (i) map += ", ";
        map += "x" + std::to_string(i + 1) + " -> " + images[i].to_string();
    }
    c.details = map + "; onto m[" + std::to_string(shift) + "]";
    return c;
}

/// Minimal generator and relation degrees of the shifted maximal ideal at
/// the model's ideal position: n generators in degree shift + w, relations
/// in degree shift + 2w.
template <FieldDomain D>
Check verify_degree_placement(const ModulePresentation<D>& m, long shift) {
    auto mp = minimal_presentation(m);
    const auto& ring = *m.ring();
    const long gdeg = shift + ring.var_weight(), rdeg = shift + 2L * ring.var_weight();
    bool ok = mp.num_generators() == ring.num_vars();
    for (long s : mp.generators().shifts()) ok = ok && s == gdeg;
    for (long s : mp.relations().source().shifts()) ok = ok && s == rdeg;
    ok = ok && mp.num_relations() == static_cast<std::size_t>(binomial(static_cast<std::int64_t>(ring.num_vars()), 2));
    std::ostringstream os;
    os << mp.num_generators() << " generators in degree";
    for (long s : mp.generators().shifts()) os << " " << s;
    os << "; " << mp.num_relations() << " relations (expected degree " << rdeg << ")";
    return {"degree_placement", ok, os.str()};
}

/// The kernel of the top stratum map is generated by the single element
/// registered on the model, in the registered degree. Without a nonzero
/// map there the whole stratum is the kernel.
template <FieldDomain D>
Check verify_kernel_generator(const BuiltModel<D>& model) {
    const auto& c = model.complex;
    const std::size_t p = model.kernel_position;
    const auto* out = c.differential(p);
    const auto& term = c.term(p);
    Check chk{"kernel_generator", false, ""};
    if (out == nullptr || out->is_zero()) {
        const auto& sh = term.shifts();
        bool uniform = !sh.empty() && std::all_of(sh.begin(), sh.end(), [&](long s) { return s == sh.front(); });
        chk.pass = uniform && model.kernel_element.empty();
        chk.details = "no map out of position " + std::to_string(p) + ": kernel is the rank " +
                      std::to_string(term.rank()) + " term at shift " + (sh.empty() ? "-" : std::to_string(sh.front()));
        return chk;
    }
    auto k = kernel_generators(*out);
    if (k.cols() != 1) {
        chk.details = "kernel has " + std::to_string(k.cols()) + " minimal generators";
        return chk;
    }
    if (k.source().shift(0) != model.kernel_degree) {
        chk.details = "generator in degree " + std::to_string(k.source().shift(0)) + ", expected " +
                      std::to_string(model.kernel_degree);
        return chk;
    }
    // Proportional to the expected element by a nonzero scalar.
    const auto& K = c.ring()->coeffs();
    std::optional<typename D::value_type> scale;
    bool ok = model.kernel_element.size() == k.rows();
    for (std::size_t i = 0; ok && i < k.rows(); ++i) {
        const auto& got = k.entry(i, 0);
        const auto& want = model.kernel_element[i];
        if (want.is_zero() || got.is_zero()) {
            ok = want.is_zero() && got.is_zero();
            continue;
        }
        if (!scale) scale = K.mul(got.terms().front().coeff, K.inv(want.terms().front().coeff));
        ok = got == want * Polynomial<D>::constant(c.ring(), *scale);
    }
    std::string elem;
    for (std::size_t i = 0; i < k.rows(); ++i) {
        if (k.entry(i, 0).is_zero()) continue;
        if (!elem.empty()) elem += " + ";
        elem += "(" + k.entry(i, 0).to_string() + ")*e" + std::to_string(i + 1);
    }
    chk.pass = ok;
    chk.details = elem + " in degree " + std::to_string(k.source().shift(0)) +
                  (ok ? "" : "; not a multiple of the expected element");
    return chk;
}

// ---------------------------------------------------------------------------
// Degree-one obstruction

struct ObstructionReport {
    bool applicable = true;
    std::int64_t dim_h1 = 0;
    std::int64_t rank_odd = 0;
    bool obstructed = false;

    std::string message() const {
        if (!applicable) return "not applicable: variables of odd degree";
        if (obstructed)
            return "dim H^1 = " + std::to_string(dim_h1) + " > rk H^odd = " + std::to_string(rank_odd) +
                   ": not realizable as minimal Hirsch-Brown model";
        return "dim H^1 = " + std::to_string(dim_h1) + " <= rk H^odd = " + std::to_string(rank_odd) + ": no obstruction";
    }
};

/// Compares the degree-one dimension with the rank of the odd part. The rank
/// of the odd part is the sum of the odd-exponent numerator coefficients,
/// which needs variables of even degree.
inline ObstructionReport realizability_obstruction(const HilbertSeries& hs) {
    ObstructionReport r;
    if (hs.weight() % 2 != 0) {
        r.applicable = false;
        return r;
    }
    r.dim_h1 = hs.at(1);
    for (auto [e, v] : hs.numerator().coefficients())
        if (e % 2 != 0) r.rank_odd += v;
    r.obstructed = r.dim_h1 > r.rank_odd;
    return r;
}

inline ObstructionReport realizability_obstruction(const DecompositionSpec& spec) {
    return realizability_obstruction(spec.hilbert_series());
}

// ---------------------------------------------------------------------------
// Intersection form on the middle filtration quotient

struct IntersectionFormReport {
    int r = 0;
    std::size_t l = 0;
    std::vector<std::vector<std::int64_t>> vectors;  // v_1..v_{l-2}, length l
    std::vector<std::vector<std::int64_t>> gram;
    std::size_t hyperbolic_blocks = 0;
    std::vector<Check> checks;
    std::vector<std::string> notes;

    bool pass() const {
        return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.pass; });
    }
};

/// sigma(e_j) = (-1)^j with 1-based j.
inline std::int64_t alternating_sign(std::size_t j) { return j % 2 == 0 ? 1 : -1; }

inline std::int64_t signed_pairing(const std::vector<std::int64_t>& a, const std::vector<std::int64_t>& b) {
    std::int64_t s = 0;
    for (std::size_t j = 0; j < a.size(); ++j) s += alternating_sign(j + 1) * a[j] * b[j];
    return s;
}

/// v_i for odd i has ones in slots i+1 and i+2; for even i in slots 1..i.
inline std::vector<std::int64_t> filtration_vector(std::size_t i, std::size_t l) {
    std::vector<std::int64_t> v(l, 0);
    if (i % 2 == 1) {
        v[i] = 1;
        v[i + 1] = 1;
    } else {
        for (std::size_t j = 0; j < i; ++j) v[j] = 1;
    }
    return v;
}

inline IntersectionFormReport intersection_form(int r) {
    if (r != 2 && r != 4) throw InvalidSpec("intersection form is defined for r = 2 and r = 4, got " + std::to_string(r));
    IntersectionFormReport rep;
    rep.r = r;
    rep.l = std::size_t{1} << (r + 1);
    const std::size_t l = rep.l, m = l - 2;
    rep.notes.push_back("l = 2^(r+1) = " + std::to_string(l) + " fixed points");
    rep.notes.push_back("pairing reconstructed as sum_j (-1)^j a_j b_j");
    for (std::size_t i = 1; i <= m; ++i) rep.vectors.push_back(filtration_vector(i, l));
    const std::vector<std::int64_t> ones(l, 1);

    bool in_kernel = true, descends = true;
    for (const auto& v : rep.vectors) {
        std::int64_t s = 0;
        for (std::size_t j = 0; j < l; ++j) s += alternating_sign(j + 1) * v[j];
        in_kernel = in_kernel && s == 0;
        descends = descends && signed_pairing(ones, v) == 0;
    }
    rep.checks.push_back({"v_in_ker_sigma", in_kernel, std::to_string(m) + " vectors"});
    rep.checks.push_back({"pairing_descends", descends, "beta(1, v_i) = 0 for all i"});

    // The ones vector and the v_i span a saturated sublattice of rank l - 1,
    // hence all of ker sigma.
    DenseMatrix<mpz_class> span(l, std::vector<mpz_class>(m + 1));
    for (std::size_t j = 0; j < l; ++j) {
        span[j][0] = 1;
        for (std::size_t i = 0; i < m; ++i) span[j][i + 1] = rep.vectors[i][j];
    }
    auto factors = invariant_factors(span, m + 1, true);
    bool saturated = factors.size() == m + 1 && std::all_of(factors.begin(), factors.end(), [](const mpz_class& f) { return f == 1; });
    rep.checks.push_back({"basis_of_quotient", saturated,
                          "rank " + std::to_string(factors.size()) + " of " + std::to_string(l - 1) +
                              ", all invariant factors 1: " + (saturated ? "yes" : "no")});

    rep.gram.assign(m, std::vector<std::int64_t>(m, 0));
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < m; ++j) rep.gram[i][j] = signed_pairing(rep.vectors[i], rep.vectors[j]);
    bool symmetric = true, hyperbolic = true;
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < m; ++j) {
            symmetric = symmetric && rep.gram[i][j] == rep.gram[j][i];
            const bool partner = (i / 2 == j / 2) && i != j;
            hyperbolic = hyperbolic && rep.gram[i][j] == (partner ? 1 : 0);
        }
    rep.hyperbolic_blocks = hyperbolic ? m / 2 : 0;
    rep.checks.push_back({"gram_symmetric", symmetric, std::to_string(m) + "x" + std::to_string(m)});
    rep.checks.push_back({"hyperbolic_blocks", hyperbolic,
                          std::to_string(rep.hyperbolic_blocks) + " blocks pairing (v1,v2), (v3,v4), ..."});
    const std::size_t copies = (std::size_t{1} << r) - 1;
    rep.checks.push_back({"connected_sum_count", rep.hyperbolic_blocks == copies,
                          std::to_string(rep.hyperbolic_blocks) + " blocks vs 2^r - 1 = " + std::to_string(copies)});
    return rep;
}

// ---------------------------------------------------------------------------
// Engine agreement

/// Symbolic Hilbert functions against degreewise dimensions at every
/// position for d in the range. The degreewise report is kept in `table`.
template <FieldDomain D>
Check engines_agree(const CochainComplex<D>& c, DegreeRange range, unsigned jobs, DegreewiseReport* table = nullptr) {
    SymbolicCohomology<D> sc(c);
    auto rep = degreewise_cohomology(c, range, jobs);
    const std::string k = c.ring()->coeffs().descriptor().name();
    Check chk{"cross_engine_" + k, true, ""};
    std::size_t compared = 0;
    for (std::size_t p = 0; p < c.length() && chk.pass; ++p) {
        auto sym = sc.hilbert_series(p).truncate(range.lo, range.hi);
        auto deg = rep.hilbert_function(p, range.lo, range.hi);
        if (auto d = detail::first_mismatch(sym, deg)) {
            chk.pass = false;
            chk.details = "position " + std::to_string(p) + " degree " + std::to_string(*d) + ": symbolic " +
                          std::to_string(sym.at(*d)) + ", degreewise " + std::to_string(deg.at(*d));
        }
        compared += sym.values.size();
    }
    if (chk.pass)
        chk.details = std::to_string(compared) + " (degree, position) pairs agree over " + k + " for d = " +
                      std::to_string(range.lo) + ".." + std::to_string(range.hi);
    if (table) *table = std::move(rep);
    return chk;
}

/// Integral consistency: free ranks equal the rational dimensions, and the
/// mod-p dimensions follow from the integral groups by universal
/// coefficients, dim_p H(d, q) = rank + #(p | torsion at (d, q)) +
/// #(p | torsion at (d + 1, q + 1)). The integral report must reach one
/// degree beyond the range.
inline std::vector<Check> integral_consistency(const DegreewiseReport& z, const DegreewiseReport& q,
                                               const std::vector<std::pair<std::uint32_t, DegreewiseReport>>& fp,
                                               DegreeRange range) {
    std::vector<Check> out;
    Check rank{"integral_rank", true, ""};
    for (long d = range.lo; d <= range.hi && rank.pass; ++d)
        for (std::size_t p = 0; p < z.positions; ++p)
            if (z.rank(d, p) != q.rank(d, p)) {
                rank.pass = false;
                rank.details = "degree " + std::to_string(d) + " position " + std::to_string(p) + ": rank " +
                               std::to_string(z.rank(d, p)) + ", dim over Q " + std::to_string(q.rank(d, p));
                break;
            }
    if (rank.pass) rank.details = "free rank equals the rational dimension for d <= " + std::to_string(range.hi);
    out.push_back(rank);

    auto divisible = [](const std::vector<mpz_class>& t, std::uint32_t p) {
        std::int64_t n = 0;
        for (const auto& f : t)
            if (mpz_divisible_ui_p(f.get_mpz_t(), p)) ++n;
        return n;
    };
    Check uct{"universal_coefficients", true, ""};
    bool all_equal = true;
    for (const auto& [p, rep] : fp)
        for (long d = range.lo; d <= range.hi; ++d)
            for (std::size_t pos = 0; pos < z.positions; ++pos) {
                std::int64_t predicted = z.rank(d, pos) + divisible(z.at(d, pos).torsion, p);
                if (pos + 1 < z.positions && d + 1 <= z.max_degree) predicted += divisible(z.at(d + 1, pos + 1).torsion, p);
                if (rep.rank(d, pos) != q.rank(d, pos)) all_equal = false;
                if (uct.pass && rep.rank(d, pos) != predicted) {
                    uct.pass = false;
                    uct.details = "F" + std::to_string(p) + " degree " + std::to_string(d) + " position " +
                                  std::to_string(pos) + ": dim " + std::to_string(rep.rank(d, pos)) + ", predicted " +
                                  std::to_string(predicted);
                }
            }
    bool torsion_free = true;
    for (long d = range.lo; d <= range.hi; ++d)
        for (std::size_t pos = 0; pos < z.positions; ++pos) torsion_free = torsion_free && z.at(d, pos).torsion.empty();
    if (uct.pass) uct.details = "mod-p dimensions match the integral groups for p in {2, 3, 5}";
    out.push_back(uct);
    out.push_back({"torsion_vs_mod_p", torsion_free == all_equal,
                   std::string("torsion ") + (torsion_free ? "empty" : "present") + ", mod-p dimensions " +
                       (all_equal ? "equal" : "differ from") + " the rational ones"});
    return out;
}

/// Passes iff no degree up to the bound carries integral torsion.
inline Check integral_torsion_scan(const DegreewiseReport& z, long bound) {
    for (const auto& e : z.entries) {
        if (e.degree > bound || e.torsion.empty()) continue;
        std::string t;
        for (const auto& f : e.torsion) t += " Z/" + f.get_str();
        return {"integral_torsion_scan", false,
                "torsion at degree " + std::to_string(e.degree) + " position " + std::to_string(e.position) + ":" + t};
    }
    return {"integral_torsion_scan", true, "no torsion for d <= " + std::to_string(bound)};
}

// ---------------------------------------------------------------------------
// Poincare identities

inline std::vector<Check> poincare_checks() {
    std::vector<Check> out;
    auto symmetric = [](const LaurentPoly& p, long dim) {
        LaurentPoly mirror;
        for (auto [e, v] : p.coefficients()) mirror.add_term(dim - e, v);
        return mirror == p;
    };
    for (int r : {2, 4, 8}) {
        auto z = homology_poincare(SpaceKind::Z, r, MutantVariant::Torus);
        auto cs = connected_sum_poincare(torus_connected_sum(r), 3L * r + 1);
        out.push_back({"poincare_torus_r" + std::to_string(r), z == cs && symmetric(z, 3L * r + 1), z.to_string()});
    }
    for (int r : {1, 2, 4, 8}) {
        auto z = homology_poincare(SpaceKind::Z, r, MutantVariant::TwoTorus);
        auto cs = connected_sum_poincare({{(std::int64_t{1} << r) - 1, r, r}}, 2L * r);
        bool ok = z.at_one() == (std::int64_t{1} << (r + 1)) && symmetric(z, 2L * r) && z == cs;
        out.push_back({"poincare_two_torus_r" + std::to_string(r), ok, z.to_string()});
    }
    auto one = homology_poincare(SpaceKind::Z, 1, MutantVariant::Torus);
    out.push_back({"poincare_torus_r1", one == connected_sum_poincare({{1, 2, 2}}, 4), one.to_string()});
    return out;
}

}  // namespace eqcoh
