#include <gtest/gtest.h>

#include "eqcoh/builders.hpp"
#include "eqcoh/cohomology.hpp"
#include "oracles.hpp"

using namespace eqcoh;

namespace {

/// dim H at position p, degree d, from the brute-force degree matrices.
std::int64_t oracle_cohomology(const CochainComplex<PrimeField>& c, std::size_t p, long d) {
    const std::uint32_t prime = c.ring()->coeffs().prime();
    auto dim = static_cast<std::int64_t>(oracle::degree_basis(c.term(p), d).size());
    if (const auto* out = c.differential(p))
        dim -= static_cast<std::int64_t>(oracle::rank_mod_p(oracle::degree_matrix(*out, d), prime));
    if (const auto* in = c.incoming(p))
        dim -= static_cast<std::int64_t>(oracle::rank_mod_p(oracle::degree_matrix(*in, d - 1), prime));
    return dim;
}

}  // namespace

TEST(Exterior, SubsetsAndSigns) {
    auto s = subsets_of_size(4, 2);
    EXPECT_EQ(s.size(), 6u);
    for (auto x : s) EXPECT_EQ(subset_size(x), 2);
    EXPECT_EQ(contraction_sign(0b1011, 0), 1);
    EXPECT_EQ(contraction_sign(0b1011, 1), -1);
    EXPECT_EQ(contraction_sign(0b1011, 3), 1);
    EXPECT_EQ(subset_name(0b101, 3), "e13");
    EXPECT_EQ(subset_name(0, 3), "1");
    EXPECT_EQ(ExteriorSlice({5, 1, 4, 1}).rank(), 30);
}

TEST(GroupAlgebra, OmegaIdentities) {
    for (int n = 1; n <= 5; ++n) {
        auto w = group_algebra_omega(n);
        EXPECT_EQ(w.augmentation(), 0);
        for (int i = 0; i < n; ++i) EXPECT_EQ(w * GroupAlgebraElement::generator(n, i), w.scaled(-1));
        EXPECT_EQ(w * w, w.scaled(mpz_class(1) << n));
        // omega is the top u-basis element.
        auto u = to_u_basis_mod2(w);
        ASSERT_EQ(u.size(), 1u);
        EXPECT_EQ(u.begin()->first, (Subset{1} << n) - 1);
    }
}

TEST(GroupAlgebra, UBasisRoundTrip) {
    const int n = 4;
    for (Subset s = 0; s < (Subset{1} << n); ++s) {
        auto u = to_u_basis_mod2(u_basis_element(n, s));
        ASSERT_EQ(u.size(), 1u);
        EXPECT_EQ(u.begin()->first, s);
    }
    // (1 - g)^2 = 2 (1 - g) vanishes mod 2.
    auto one = GroupAlgebraElement::identity(n), g = GroupAlgebraElement::generator(n, 2);
    EXPECT_TRUE(to_u_basis_mod2((one - g) * (one - g)).empty());
}

TEST(GroupAlgebra, ActionIsUnsignedContractionModTwo) {
    for (int r : {1, 2, 4}) {
        auto spec = MutantSpec::make(MutantVariant::TwoTorus, r);
        auto model = mutant_complex(spec, PrimeField(2));
        const auto& c = model.complex;
        for (int k = r; k >= 2; --k) {
            const auto p = static_cast<std::size_t>(r - k + 1);
            auto contraction = detail::contraction_map(c.ring(), k, c.term(p), c.term(p + 1));
            const auto& action = *c.differential(p);
            for (std::size_t i = 0; i < action.rows(); ++i)
                for (std::size_t j = 0; j < action.cols(); ++j)
                    EXPECT_EQ(action.entry(i, j), contraction.entry(i, j)) << "r " << r << " k " << k;
        }
    }
}

TEST(Koszul, ShapesAndExactness) {
    for (int n = 1; n <= 4; ++n) {
        auto c = koszul_complex(n, 2, PrimeField(5));
        ASSERT_EQ(c.length(), static_cast<std::size_t>(n + 1));
        for (int k = n; k >= 0; --k) {
            const auto& t = c.term(static_cast<std::size_t>(n - k));
            EXPECT_EQ(static_cast<std::int64_t>(t.rank()), binomial(n, k));
            for (long s : t.shifts()) EXPECT_EQ(s, k);
        }
        for (long d = 0; d <= 8; ++d)
            for (std::size_t p = 0; p < c.length(); ++p) {
                const bool end = p + 1 == c.length() && d == 0;
                EXPECT_EQ(oracle_cohomology(c, p, d), end ? 1 : 0) << "n " << n << " p " << p << " d " << d;
            }
    }
    EXPECT_THROW(koszul_complex(0, 2, Rationals{}), InvalidSpec);
}

TEST(Mutant, SpecValidation) {
    EXPECT_THROW(MutantSpec::make(MutantVariant::Torus, 3), InvalidSpec);
    EXPECT_NO_THROW(MutantSpec::make(MutantVariant::Torus, 3, true));
    EXPECT_THROW(MutantSpec::make(MutantVariant::TwoTorus, 0, true), InvalidSpec);
    auto t = MutantSpec::make(MutantVariant::Torus, 4);
    EXPECT_EQ(t.base, 4);
    EXPECT_EQ(t.top, 13);
    auto u = MutantSpec::make(MutantVariant::TwoTorus, 4);
    EXPECT_EQ(u.w, 1);
    EXPECT_EQ(u.top, 8);
}

TEST(Mutant, TorusShapes) {
    auto model = mutant_complex(MutantSpec::make(MutantVariant::Torus, 2), Rationals{});
    const auto& c = model.complex;
    ASSERT_EQ(c.length(), 4u);
    EXPECT_EQ(c.term(0).shifts(), std::vector<long>{0});
    EXPECT_EQ(c.term(1).shifts(), (std::vector<long>{4, 4, 4}));
    EXPECT_EQ(c.term(2).shifts(), (std::vector<long>{3, 3, 3}));
    EXPECT_EQ(c.term(3).shifts(), std::vector<long>{7});
    EXPECT_TRUE(c.differential(0)->is_zero());
    EXPECT_TRUE(c.differential(2)->is_zero());
    EXPECT_EQ(expected_cohomology(MutantSpec::make(MutantVariant::Torus, 2)).to_string(), "R + m[1] + R[7] + R[6]");
    EXPECT_EQ(expected_cohomology(MutantSpec::make(MutantVariant::Torus, 1)).to_string(), "R + R[2] + R[2] + R[4]");
    EXPECT_EQ(expected_cohomology(MutantSpec::make(MutantVariant::TwoTorus, 4)).to_string(), "R + m[3] + R[8] + R[5]");
}

TEST(Mutant, CohomologyMatchesBruteForce) {
    for (auto v : {MutantVariant::Torus, MutantVariant::TwoTorus})
        for (int r : {1, 2}) {
            auto spec = MutantSpec::make(v, r);
            auto model = mutant_complex(spec, PrimeField(2));
            auto hs = expected_cohomology(spec).hilbert_series().truncate(0, 10);
            for (long d = 0; d <= 10; ++d) {
                std::int64_t total = 0;
                for (std::size_t p = 0; p < model.complex.length(); ++p) total += oracle_cohomology(model.complex, p, d);
                EXPECT_EQ(total, hs.at(d)) << to_string(v) << " r " << r << " d " << d;
            }
        }
}

TEST(Example, DifferentialMatchesContractionUpToSignedPermutation) {
    auto lit = example_complex(Rationals{});
    auto ext = mutant_complex(MutantSpec::make(MutantVariant::Example33, 2), Rationals{});
    SymbolicCohomology<Rationals> a(lit.complex), b(ext.complex);
    for (std::size_t p = 0; p < 4; ++p) EXPECT_EQ(a.hilbert_series(p), b.hilbert_series(p));
    // Each column of B holds two variables with opposite signs.
    const auto& B = *lit.complex.differential(1);
    for (std::size_t j = 0; j < 3; ++j) {
        int nonzero = 0;
        for (std::size_t i = 0; i < 3; ++i) nonzero += B.entry(i, j).is_zero() ? 0 : 1;
        EXPECT_EQ(nonzero, 2);
        EXPECT_TRUE(B.entry(j, j).is_zero());
    }
}

TEST(Builders, FlippedSignBreaksDifferential) {
    auto spec = MutantSpec::make(MutantVariant::Torus, 4);
    auto model = mutant_complex(spec, Rationals{});
    auto terms = model.complex.terms();
    auto diffs = model.complex.differentials();
    auto& d = diffs[2];
    d.set(0, 0, d.entry(0, 0).scaled(mpq_class(-1)));
    EXPECT_THROW(build_complex(terms, diffs), InvalidComplex);
}

TEST(Builders, RejectsUnitEntries) {
    auto R = make_ring(Rationals{}, 2, 2);
    GradedFreeModule<Rationals> a(R, {0}), b(R, {1});
    GradedMap<Rationals> m(a, b, 1);
    m.set(0, 0, Polynomial<Rationals>::constant(R, 1L));
    EXPECT_THROW(build_complex<Rationals>({a, b}, {m}, {}, true), InvalidComplex);
    EXPECT_NO_THROW(build_complex<Rationals>({a, b}, {m}, {}, false));
}

TEST(Doubling, MaximalIdealInTwoVariables) {
    auto R = make_ring(Rationals{}, 2, 2);
    // m = coker of (t2, -t1)^T on two generators of degree 2.
    GradedMap<Rationals> b(GradedFreeModule<Rationals>(R, {4}), GradedFreeModule<Rationals>(R, {2, 2}), 0);
    b.set(0, 0, Polynomial<Rationals>::variable(R, 1));
    b.set(1, 0, -Polynomial<Rationals>::variable(R, 0));
    auto dm = doubling_complex(b);
    EXPECT_EQ(dm.n, 8);
    const auto& c = dm.complex;
    ASSERT_EQ(c.length(), 6u);
    EXPECT_EQ(c.term(1).shifts(), std::vector<long>{3});
    EXPECT_EQ(c.term(2).shifts(), (std::vector<long>{2, 2}));
    EXPECT_EQ(c.term(3).shifts(), (std::vector<long>{6, 6}));
    EXPECT_EQ(c.term(4).shifts(), std::vector<long>{5});
    EXPECT_EQ(c.term(5).shifts(), std::vector<long>{8});
    SymbolicCohomology<Rationals> sc(c);
    // coker B is m[0] shifted so its generators sit in degree 2.
    DecompositionSpec m;
    m.num_vars = 2;
    m.weight = 2;
    m.summands = {Summand::max_ideal(0)};
    EXPECT_EQ(sc.hilbert_series(2), m.hilbert_series());
    EXPECT_THROW(doubling_complex(b, 4), InvalidSpec);
    EXPECT_NO_THROW(doubling_complex(b, 4, true));
}

TEST(Poincare, TorusMatchesConnectedSum) {
    auto p2 = homology_poincare(SpaceKind::Z, 2, MutantVariant::Torus);
    LaurentPoly want = LaurentPoly::one() + LaurentPoly::monomial(3, 3) + LaurentPoly::monomial(4, 3) + LaurentPoly::monomial(7);
    EXPECT_EQ(p2, want);
    for (int r : {2, 4, 8})
        EXPECT_EQ(homology_poincare(SpaceKind::Z, r, MutantVariant::Torus),
                  connected_sum_poincare(torus_connected_sum(r), 3L * r + 1));
    EXPECT_THROW(homology_poincare(SpaceKind::Z, 3, MutantVariant::Torus), InvalidSpec);
    EXPECT_THROW(connected_sum_poincare({{1, 2, 2}}, 5), InvalidSpec);
}

TEST(Poincare, TwoTorusTotals) {
    for (int r : {1, 2, 4, 8}) {
        auto p = homology_poincare(SpaceKind::Z, r, MutantVariant::TwoTorus);
        std::int64_t total = 0;
        for (auto [e, v] : p.coefficients()) total += v;
        EXPECT_EQ(total, std::int64_t{1} << (r + 1));
        const std::int64_t copies = (std::int64_t{1} << r) - 1;
        EXPECT_EQ(p, connected_sum_poincare({{copies, r, r}}, 2L * r));
    }
}
