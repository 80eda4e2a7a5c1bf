#pragma once

// Model runs shared by the command line tool and the acceptance suite:
// build a model, run both engines, and collect the verdicts into a report.

#include <algorithm>
#include <cstdio>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "eqcoh/io.hpp"

namespace eqcoh {

enum class Engine { Symbolic, Degreewise, Both };

inline Engine parse_engine(std::string_view s) {
    if (s == "symbolic") return Engine::Symbolic;
    if (s == "degreewise") return Engine::Degreewise;
    if (s == "both") return Engine::Both;
    throw ParseError("unknown engine '" + std::string(s) + "'");
}

struct RunConfig {
    std::string model = "example-3-3";
    int r = 2;
    int n = 3;
    /// Q when unset; for doubling the presentation's own ring.
    std::optional<CoefficientRing> coeff;
    std::optional<long> max_degree;
    Engine engine = Engine::Both;
    unsigned jobs = 0;
    std::optional<PresentationData> presentation;
    std::optional<long> doubling_n;
    bool allow_overlap = false;
};

inline const std::vector<std::string>& model_names() {
    static const std::vector<std::string> names{"koszul", "mutant-torus", "mutant-2torus", "example-3-3", "doubling"};
    return names;
}

inline MutantSpec mutant_spec(const RunConfig& cfg) {
    if (cfg.model == "mutant-torus") return MutantSpec::make(MutantVariant::Torus, cfg.r);
    if (cfg.model == "mutant-2torus") return MutantSpec::make(MutantVariant::TwoTorus, cfg.r);
    if (cfg.model == "example-3-3") return MutantSpec::make(MutantVariant::Example33, 2);
    throw InvalidSpec("model '" + cfg.model + "' is not a mutant complex");
}

/// 3r + 1 + 4w, capped at 25 for the torus family at r = 8 and at the top
/// shift 2r = 16 for the two-torus family at r = 8; 20 for Koszul
/// complexes; n + 2w for doubling.
inline long default_degree_bound(const RunConfig& cfg, long doubling_n = 0, int doubling_w = 2) {
    if (cfg.model == "koszul") return 20;
    if (cfg.model == "doubling") return doubling_n + 2L * doubling_w;
    auto spec = mutant_spec(cfg);
    long d = 3L * spec.r + 1 + 4L * spec.w;
    if (spec.r == 8) d = std::min(d, spec.variant == MutantVariant::TwoTorus ? spec.top : 25L);
    return d;
}

namespace detail {

inline const CoefficientRing kQ{CoefficientKind::Rationals, 0};
inline const CoefficientRing kF2{CoefficientKind::PrimeField, 2};

template <class Fn>
void with_field(const CoefficientRing& k, Fn&& fn) {
    switch (k.kind) {
        case CoefficientKind::Rationals: fn(Rationals{}); return;
        case CoefficientKind::PrimeField: fn(PrimeField(k.p)); return;
        case CoefficientKind::Integers: break;
    }
    throw NotAField("the symbolic engine needs field coefficients");
}

template <CoefficientDomain D>
void check_bound(const CochainComplex<D>& c, long bound) {
    if (bound < c.max_shift())
        throw InvalidSpec("degree bound " + std::to_string(bound) + " below the largest shift " +
                          std::to_string(c.max_shift()) + " of the model");
}

/// Fields for the engine comparison: Q, F2 and the requested one.
inline std::vector<CoefficientRing> comparison_fields(const CoefficientRing& field) {
    std::vector<CoefficientRing> out{kQ, kF2};
    if (std::find(out.begin(), out.end(), field) == out.end()) out.push_back(field);
    return out;
}

inline Check renamed(Check c, const std::string& suffix) {
    c.name += "_" + suffix;
    return c;
}

/// Structure of the cohomology from the symbolic engine.
template <FieldDomain D>
void structure_checks(VerificationReport& rep, const BuiltModel<D>& model, const DecompositionSpec& expected,
                      bool expect_obstruction, long bound) {
    SymbolicCohomology<D> sc(model.complex);
    auto h = sc.total_presentation();
    rep.add(match_decomposition(h, expected, bound));
    rep.betti = betti_table(h);
    auto hs = sc.total_hilbert_series();
    rep.facts["hilbert_series"] = hs.to_string();
    if (model.ideal_position) {
        const std::size_t p = *model.ideal_position;
        ModulePresentation<D> at(model.complex.term(p), *model.complex.incoming(p));
        rep.add(verify_explicit_map(at, model.ideal_images, model.ideal_shift));
        rep.add(verify_degree_placement(at, model.ideal_shift));
    }
    auto cls = classify_module(h);
    const auto want = expected.analytic_class();
    rep.facts["classification"] = to_string(cls);
    rep.add("classification", cls == want, to_string(cls) + " (expected " + to_string(want) + ")");
    const bool free = is_free(h);
    rep.add("freeness", free == (want == ModuleClass::Free), free ? "free" : "not free");
    auto tf = is_torsion_free(h);
    rep.add("torsion_freeness", tf.torsion_free,
            tf.torsion_free ? "bidual map injective" : "torsion element found");
    const auto rank = rank_of_module(h);
    rep.add("rank", rank == expected.rank(), std::to_string(rank) + " (expected " + std::to_string(expected.rank()) + ")");
    rep.add(verify_kernel_generator(model));
    auto ob = realizability_obstruction(hs);
    rep.facts["obstruction"] = ob.message();
    rep.add("realizability_obstruction", ob.obstructed == expect_obstruction, ob.message());
}

/// Degreewise tables over Q, F2 and the requested field, compared with the
/// symbolic engine when it runs; over Z also the integral scan.
template <class Build>
void degreewise_checks(VerificationReport& rep, Build&& build, const RunConfig& cfg, const CoefficientRing& coeff,
                       DegreeRange range, const std::optional<DecompositionSpec>& expected, std::size_t num_vars,
                       int weight) {
    const bool compare = cfg.engine == Engine::Both;
    const CoefficientRing field = coeff.is_field() ? coeff : kQ;
    std::optional<DegreewiseReport> q;
    std::vector<std::pair<std::uint32_t, DegreewiseReport>> fp;
    for (const auto& f : comparison_fields(field)) {
        with_field(f, [&](auto k) {
            auto c = build(k);
            DegreewiseReport table;
            if (compare)
                rep.add(engines_agree(c, range, cfg.jobs, &table));
            else
                table = degreewise_cohomology(c, range, cfg.jobs);
            if (f == field && expected)
                rep.add(renamed(match_decomposition(table, num_vars, weight, *expected, range.hi), f.name()));
            if (f == field) rep.tables.push_back(table);
            if (f == kQ) q = table;
            if (f == kF2) fp.emplace_back(2, std::move(table));
        });
    }
    if (coeff.kind != CoefficientKind::Integers) return;
    auto z = degreewise_cohomology(build(Integers{}), DegreeRange{range.lo, range.hi + 1}, cfg.jobs);
    rep.add(integral_torsion_scan(z, range.hi));
    if (expected) rep.add(renamed(match_decomposition(z, num_vars, weight, *expected, range.hi), "Z"));
    for (std::uint32_t p : {3u, 5u}) fp.emplace_back(p, degreewise_cohomology(build(PrimeField(p)), range, cfg.jobs));
    rep.add(integral_consistency(z, *q, fp, range));
    rep.tables.push_back(std::move(z));
}

inline VerificationReport new_report(const std::string& model, const CoefficientRing& coeff, long bound) {
    VerificationReport rep;
    rep.model = model;
    rep.coefficients = coeff.name();
    rep.degree_bound = bound;
    return rep;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Model runs

/// Mutant complexes and the literal three-variable example.
inline VerificationReport verify_mutant(const RunConfig& cfg) {
    const auto spec = mutant_spec(cfg);
    const bool literal = spec.variant == MutantVariant::Example33;
    const auto coeff = cfg.coeff.value_or(detail::kQ);
    const long bound = cfg.max_degree.value_or(default_degree_bound(cfg));
    const auto expected = expected_cohomology(spec);
    auto rep = detail::new_report(literal ? "example-3-3" : spec.name(), coeff, bound);
    rep.facts["decomposition"] = expected.to_string();
    if (spec.r == 8 && !cfg.max_degree) rep.notes.push_back("degree bound capped at " + std::to_string(bound) + " for r = 8");

    auto build = [&](auto k) {
        if (literal) return example_complex(k);
        return mutant_complex(spec, k);
    };
    long lo = 0;
    const CoefficientRing field = coeff.is_field() ? coeff : detail::kQ;
    detail::with_field(field, [&](auto k) {
        auto model = build(k);
        detail::check_bound(model.complex, bound);
        lo = std::min(0L, model.complex.min_shift());
        rep.add("complex_valid", true,
                std::to_string(model.complex.length()) + " terms, d^2 = 0, homogeneous, entries in m");
        if (cfg.engine == Engine::Degreewise) return;
        detail::structure_checks(rep, model, expected, literal, bound);
        if (literal) {
            // The mutant form with exterior basis has the same cohomology.
            SymbolicCohomology<std::decay_t<decltype(k)>> a(model.complex), b(mutant_complex(spec, k).complex);
            bool same = true;
            for (std::size_t p = 0; p < model.complex.length(); ++p) same = same && a.hilbert_series(p) == b.hilbert_series(p);
            rep.add("exterior_form_agrees", same, "Hilbert series at every position");
        }
    });
    if (cfg.engine != Engine::Symbolic)
        detail::degreewise_checks(
            rep, [&](auto k) { return build(k).complex; }, cfg, coeff, DegreeRange{lo, bound}, expected,
            static_cast<std::size_t>(spec.n()), spec.w);
    return rep;
}

/// Koszul complex on n variables of weight 2: exact except at the last
/// position, where the cohomology is the residue field in degree 0.
inline VerificationReport verify_koszul(const RunConfig& cfg) {
    const int n = cfg.n, w = 2;
    if (n < 1 || n > 9) throw InvalidSpec("Koszul runs take 1 <= n <= 9, got " + std::to_string(n));
    const auto coeff = cfg.coeff.value_or(detail::kQ);
    const long bound = cfg.max_degree.value_or(default_degree_bound(cfg));
    auto rep = detail::new_report("koszul n=" + std::to_string(n), coeff, bound);
    const auto last = static_cast<std::size_t>(n);
    auto build = [&](auto k) { return koszul_complex(n, w, k); };
    const CoefficientRing field = coeff.is_field() ? coeff : detail::kQ;
    if (cfg.engine != Engine::Degreewise)
        detail::with_field(field, [&](auto k) {
            auto c = build(k);
            detail::check_bound(c, bound);
            SymbolicCohomology<std::decay_t<decltype(k)>> sc(c);
            std::string bad;
            for (std::size_t p = 0; p < last; ++p)
                if (!sc.hilbert_series(p).numerator().is_zero()) bad += " " + c.label(p);
            rep.add("exact_symbolic", bad.empty(), bad.empty() ? "H = 0 at L" + std::to_string(n) + "..L1" : "nonzero at" + bad);
            LaurentPoly residue = LaurentPoly::one();
            for (int i = 0; i < n; ++i) residue = residue * (LaurentPoly::one() - LaurentPoly::monomial(w));
            auto end = sc.hilbert_series(last);
            rep.add("residue_field", end == HilbertSeries(residue, static_cast<std::size_t>(n), w),
                    "H at L0: " + end.to_string());
            rep.facts["hilbert_series"] = sc.total_hilbert_series().to_string();
        });
    if (cfg.engine != Engine::Symbolic) {
        detail::degreewise_checks(rep, build, cfg, coeff, DegreeRange{0, bound}, std::nullopt,
                                  static_cast<std::size_t>(n), w);
        for (const auto& t : rep.tables) {
            std::string bad;
            for (const auto& e : t.entries) {
                const bool want = e.position == last && e.degree == 0;
                if (e.rank != (want ? 1 : 0) || !e.torsion.empty())
                    bad = "degree " + std::to_string(e.degree) + " position " + std::to_string(e.position);
            }
            rep.add("exact_degreewise_" + t.coefficients, bad.empty(),
                    bad.empty() ? "zero except the residue field, d = 0.." + std::to_string(bound) : "nonzero at " + bad);
        }
    }
    return rep;
}

namespace detail {

template <FieldDomain D>
HilbertSeries kernel_series(const GradedMap<D>& b) {
    auto k = kernel_generators(b);
    return b.source().hilbert_series() - quotient_hilbert_series(image_basis(k));
}

template <FieldDomain D>
HilbertSeries cokernel_series(const GradedMap<D>& b) {
    return quotient_hilbert_series(image_basis(b));
}

}  // namespace detail

/// The doubling complex of a presentation: its cohomology is R, ker B,
/// coker B, ker B^T, coker B^T and R[n], each piece computed on its own.
inline VerificationReport verify_doubling(const RunConfig& cfg) {
    if (!cfg.presentation) throw InvalidSpec("doubling needs a presentation");
    const auto& pd = *cfg.presentation;
    const auto coeff = cfg.coeff.value_or(pd.coeff);
    auto build = [&](auto k) { return doubling_complex(pd.build(k).relations(), cfg.doubling_n, cfg.allow_overlap); };
    long n = 0;
    const CoefficientRing field = coeff.is_field() ? coeff : detail::kQ;
    detail::with_field(field, [&](auto k) { n = build(k).n; });
    const long bound = cfg.max_degree.value_or(default_degree_bound(cfg, n, pd.weight));
    auto rep = detail::new_report("doubling", coeff, bound);
    rep.facts["n"] = std::to_string(n) + (cfg.doubling_n ? "" : " (default: twice the largest shift plus w)");
    long lo = 0;
    detail::with_field(field, [&](auto k) {
        using D = std::decay_t<decltype(k)>;
        auto input = pd.build(k);
        auto dm = build(k);
        const auto& c = dm.complex;
        detail::check_bound(c, bound);
        lo = std::min(0L, c.min_shift());
        rep.add("complex_valid", true, "6 terms, d^2 = 0, homogeneous, entries in m");
        if (cfg.engine == Engine::Degreewise) return;
        const auto& bc = *c.differential(DoublingModel<D>::kF1);
        const auto& bt = *c.differential(DoublingModel<D>::kF0Dual);
        const std::size_t nv = c.ring()->num_vars();
        const int w = c.ring()->var_weight();
        std::vector<std::pair<std::string, HilbertSeries>> pieces{
            {"R", HilbertSeries::free(nv, w, 0)},
            {"ker B", detail::kernel_series(bc)},
            {"coker B", detail::cokernel_series(bc)},
            {"ker B^T", detail::kernel_series(bt)},
            {"coker B^T", detail::cokernel_series(bt)},
            {"R[n]", HilbertSeries::free(nv, w, n)}};
        SymbolicCohomology<D> sc(c);
        bool ok = true;
        std::string where;
        auto total = HilbertSeries::zero(nv, w), sum = HilbertSeries::zero(nv, w);
        for (std::size_t p = 0; p < pieces.size(); ++p) {
            auto hs = sc.hilbert_series(p);
            if (!(hs == pieces[p].second)) {
                ok = false;
                where += " " + pieces[p].first;
            }
            total += hs;
            sum += pieces[p].second;
            if (!pieces[p].second.numerator().is_zero()) rep.facts["H " + pieces[p].first] = pieces[p].second.to_string();
        }
        rep.add("doubling_identity", ok && total == sum,
                ok ? "H = R + coker B + ker B + coker B^T + ker B^T + R[n]: " + total.to_string()
                   : "mismatch at" + where);
        ModulePresentation<D> coker(c.term(DoublingModel<D>::kF0), bc);
        auto cls = classify_module(coker);
        auto in_cls = classify_module(input);
        rep.facts["coker_classification"] = to_string(cls);
        rep.add("coker_classification", cls == in_cls,
                "coker B is " + to_string(cls) + "; input module is " + to_string(in_cls));
        rep.add("coker_matches_input", hilbert_series(coker) == hilbert_series(input), hilbert_series(input).to_string());
    });
    if (cfg.engine != Engine::Symbolic) {
        detail::degreewise_checks(
            rep, [&](auto k) { return build(k).complex; }, cfg, coeff, DegreeRange{lo, bound}, std::nullopt,
            pd.num_vars, pd.weight);
    }
    return rep;
}

inline VerificationReport run_verify(const RunConfig& cfg) {
    if (cfg.model == "koszul") return verify_koszul(cfg);
    if (cfg.model == "doubling") return verify_doubling(cfg);
    return verify_mutant(cfg);
}

// ---------------------------------------------------------------------------
// Reports

inline VerificationReport poincare_report(std::optional<SpaceKind> space = std::nullopt, int r = 2,
                                          MutantVariant variant = MutantVariant::Torus) {
    VerificationReport rep;
    rep.model = "poincare";
    if (space) {
        static const char* names[] = {"X", "Y", "Z"};
        auto p = homology_poincare(*space, r, variant);
        rep.facts["space"] = std::string(names[static_cast<int>(*space)]) + " r=" + std::to_string(r) + " " + to_string(variant);
        rep.facts["poincare"] = p.to_string();
    }
    rep.add(poincare_checks());
    return rep;
}

inline VerificationReport intersection_form_report(int r) {
    auto f = intersection_form(r);
    VerificationReport rep;
    rep.model = "intersection-form r=" + std::to_string(r);
    rep.add(f.checks);
    rep.notes = f.notes;
    rep.facts["l"] = std::to_string(f.l);
    rep.facts["gram_size"] = std::to_string(f.gram.size()) + "x" + std::to_string(f.gram.size());
    rep.facts["hyperbolic_blocks"] = std::to_string(f.hyperbolic_blocks);
    for (std::size_t i = 0; i < f.gram.size(); ++i) {
        std::string row;
        for (auto x : f.gram[i]) row += (row.empty() ? "" : " ") + std::to_string(x);
        char key[16];
        std::snprintf(key, sizeof key, "gram_row_%02zu", i + 1);
        rep.facts[key] = row;
    }
    return rep;
}

/// Degree-one inequality on the computed cohomology of a model, and on the
/// expected decompositions of all geometric models (none may be flagged).
inline VerificationReport obstruction_report(const RunConfig& cfg) {
    VerificationReport rep;
    rep.model = "obstruction " + cfg.model;
    HilbertSeries hs = HilbertSeries::zero(0, 2);
    if (cfg.model == "koszul" || cfg.model == "doubling") throw InvalidSpec("obstruction report needs a mutant model");
    const auto spec = mutant_spec(cfg);
    if (spec.variant == MutantVariant::Example33)
        hs = SymbolicCohomology<Rationals>(example_complex(Rationals{}).complex).total_hilbert_series();
    else
        hs = SymbolicCohomology<Rationals>(mutant_complex(spec, Rationals{}).complex).total_hilbert_series();
    auto ob = realizability_obstruction(hs);
    rep.facts["obstruction"] = ob.message();
    const bool expect = spec.variant == MutantVariant::Example33;
    rep.add("computed_" + cfg.model, ob.obstructed == expect, ob.message());
    for (auto v : {MutantVariant::Torus, MutantVariant::TwoTorus})
        for (int r : {1, 2, 4, 8}) {
            auto s = MutantSpec::make(v, r);
            auto o = realizability_obstruction(expected_cohomology(s));
            rep.add("geometric_" + s.name(), !o.obstructed, o.message());
        }
    return rep;
}

/// Hilbert series per position, Hilbert function up to the bound and the
/// Betti table of the total cohomology, over the requested field.
inline VerificationReport cohomology_report(const RunConfig& cfg) {
    const auto coeff = cfg.coeff.value_or(detail::kQ);
    const long bound = cfg.max_degree.value_or(cfg.model == "doubling" ? 20 : default_degree_bound(cfg));
    auto rep = detail::new_report(cfg.model, coeff, bound);
    auto run = [&](const auto& c) {
        using D = typename std::decay_t<decltype(*c.ring())>::domain_type;
        SymbolicCohomology<D> sc(c);
        for (std::size_t p = 0; p < c.length(); ++p) {
            auto hs = sc.hilbert_series(p);
            if (hs.numerator().is_zero()) continue;
            char key[32];
            std::snprintf(key, sizeof key, "H%02zu %s", p, c.label(p).c_str());
            rep.facts[key] = hs.to_string() + " " + detail::hf_string(hs.truncate(0, bound), 64);
        }
        auto h = sc.total_presentation();
        rep.betti = betti_table(h);
        rep.facts["classification"] = to_string(classify_module(h));
        rep.add("complex_valid", true, std::to_string(c.length()) + " terms");
    };
    detail::with_field(coeff.is_field() ? coeff : detail::kQ, [&](auto k) {
        if (cfg.model == "koszul")
            run(koszul_complex(cfg.n, 2, k));
        else if (cfg.model == "doubling")
            run(doubling_complex(cfg.presentation.value().build(k).relations(), cfg.doubling_n, cfg.allow_overlap).complex);
        else if (cfg.model == "example-3-3")
            run(example_complex(k).complex);
        else
            run(mutant_complex(mutant_spec(cfg), k).complex);
    });
    return rep;
}

/// The default suite.
inline std::vector<VerificationReport> run_all(unsigned jobs) {
    std::vector<VerificationReport> out;
    RunConfig base;
    base.jobs = jobs;
    auto with = [&](std::string model, int r, int n, CoefficientRing k) {
        RunConfig c = base;
        c.model = std::move(model);
        c.r = r;
        c.n = n;
        c.coeff = k;
        return c;
    };
    out.push_back(run_verify(with("example-3-3", 2, 3, detail::kQ)));
    for (int r : {1, 2, 4, 8}) out.push_back(run_verify(with("mutant-torus", r, 0, CoefficientRing{CoefficientKind::Integers, 0})));
    for (int r : {1, 2, 4, 8}) out.push_back(run_verify(with("mutant-2torus", r, 0, detail::kF2)));
    for (int n = 1; n <= 9; ++n) out.push_back(run_verify(with("koszul", 2, n, detail::kQ)));
    out.push_back(poincare_report());
    for (int r : {2, 4}) out.push_back(intersection_form_report(r));
    out.push_back(obstruction_report(with("example-3-3", 2, 3, detail::kQ)));
    return out;
}

}  // namespace eqcoh
