#include <gtest/gtest.h>

#include <random>

#include "eqcoh/graded.hpp"
#include "eqcoh/hilbert.hpp"

using namespace eqcoh;

namespace {

std::int64_t monomial_count(std::size_t n, long deg) {
    if (deg < 0) return 0;
    return static_cast<std::int64_t>(monomials_of_degree(n, static_cast<unsigned>(deg)).size());
}

}  // namespace

TEST(Laurent, Printing) {
    auto p = LaurentPoly::one() + LaurentPoly::monomial(3, 3) + LaurentPoly::monomial(4, 3) + LaurentPoly::monomial(7);
    EXPECT_EQ(p.to_string(), "1 + 3q^3 + 3q^4 + q^7");
    EXPECT_EQ((LaurentPoly::monomial(1) - LaurentPoly::monomial(1)).to_string(), "0");
    EXPECT_EQ(p.at_one(), 8);
}

TEST(Hilbert, DirectSumTruncation) {
    // R + R[2]^2 + R[4] over two variables of weight 2.
    auto R = make_ring(Rationals{}, 2, 2);
    GradedFreeModule<Rationals> F(R, {0, 2, 2, 4});
    auto h = F.hilbert_series().truncate(0, 4);
    std::vector<std::int64_t> expected;
    for (long d = 0; d <= 4; ++d) {
        std::int64_t v = 0;
        for (long s : F.shifts())
            if ((d - s) >= 0 && (d - s) % 2 == 0) v += monomial_count(2, (d - s) / 2);
        expected.push_back(v);
    }
    EXPECT_EQ(h.values, expected);
    EXPECT_EQ(h.values, (std::vector<std::int64_t>{1, 0, 4, 0, 8}));
}

TEST(Hilbert, FreeSeriesMatchesMonomialCount) {
    for (std::size_t n = 1; n <= 5; ++n) {
        auto hs = HilbertSeries::free(n, 1, 3);
        for (long d = 0; d < 9; ++d) EXPECT_EQ(hs.at(d), monomial_count(n, d - 3)) << n << " " << d;
    }
}

TEST(Hilbert, MaximalIdealQuotientIsOneDimensional) {
    std::vector<Monomial> gens;
    for (std::size_t i = 0; i < 4; ++i) gens.push_back(Monomial::variable(i));
    auto num = monomial_ideal_numerator(gens, 1);
    HilbertSeries hs(num, 4, 1);
    EXPECT_EQ(hs.at(0), 1);
    for (long d = 1; d < 6; ++d) EXPECT_EQ(hs.at(d), 0);
}

TEST(Hilbert, ExtraVariableMultipliesByGeometricSeries) {
    auto hs = HilbertSeries(LaurentPoly::one() - LaurentPoly::monomial(2), 2, 1);
    auto up = hs.with_extra_variable();
    for (long d = 0; d < 8; ++d) {
        std::int64_t sum = 0;
        for (long e = 0; e <= d; ++e) sum += hs.at(e);
        EXPECT_EQ(up.at(d), sum);
    }
}

// Property: the pivot recursion agrees with enumeration of standard monomials.
TEST(Hilbert, IdealNumeratorMatchesEnumeration) {
    std::mt19937 rng(20240611);
    for (int trial = 0; trial < 60; ++trial) {
        std::size_t n = 1 + rng() % 4;
        int w = 1 + static_cast<int>(rng() % 2);
        std::vector<Monomial> gens;
        std::size_t count = 1 + rng() % 5;
        for (std::size_t k = 0; k < count; ++k) {
            std::vector<unsigned> e(n);
            for (auto& x : e) x = rng() % 3;
            auto m = Monomial::from_exponents(e);
            if (!m.is_one()) gens.push_back(m);
        }
        HilbertSeries hs(monomial_ideal_numerator(gens, w), n, w);
        for (unsigned d = 0; d < 9; ++d)
            EXPECT_EQ(hs.at(static_cast<long>(d) * w), count_standard_monomials(gens, n, d)) << "trial " << trial;
    }
}
