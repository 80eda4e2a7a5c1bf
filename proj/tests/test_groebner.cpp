#include <gtest/gtest.h>

#include "eqcoh/groebner.hpp"
#include "oracles.hpp"
#include "random_maps.hpp"

using namespace eqcoh;
using K = PrimeField;

namespace {

gb::GroebnerBasis<K> basis_of(const GradedMap<K>& m, gb::Options opts = {}) {
    gb::FreeSpace<K> space(m.ring(), m.target().shifts());
    std::vector<gb::Vec<K>> cols;
    for (std::size_t j = 0; j < m.cols(); ++j) cols.push_back(gb::column_vec(space, m, j));
    return gb::GroebnerBasis<K>(space, cols, opts);
}

}  // namespace

TEST(Groebner, KnownIdealBasis) {
    // (xy, x^2 - y^2) has leading ideal (x^2, xy, y^3) in degrevlex.
    auto R = make_ring(K(32003), 2, 1);
    GradedMap<K> m(GradedFreeModule<K>(R, {2, 2}), GradedFreeModule<K>(R, {0}), 0);
    m.set(0, 0, parse_polynomial(R, "t1*t2"));
    m.set(0, 1, parse_polynomial(R, "t1^2 - t2^2"));
    auto g = basis_of(m);
    auto lead = g.leading_monomials(0);
    std::vector<std::string> names;
    for (const auto& x : lead) names.push_back(x.to_string(2));
    std::sort(names.begin(), names.end());
    EXPECT_EQ(names, (std::vector<std::string>{"t1*t2", "t1^2", "t2^3"}));
}

TEST(Groebner, MembershipOfCombinations) {
    auto R = make_ring(K(101), 3, 1);
    GradedMap<K> m(GradedFreeModule<K>(R, {1, 1}), GradedFreeModule<K>(R, {0, 0}), 0);
    m.set(0, 0, parse_polynomial(R, "t1"));
    m.set(1, 0, parse_polynomial(R, "t2"));
    m.set(0, 1, parse_polynomial(R, "t3"));
    m.set(1, 1, parse_polynomial(R, "t1 + t2"));
    auto g = basis_of(m);
    const auto& space = g.space();
    auto c0 = gb::column_vec(space, m, 0), c1 = gb::column_vec(space, m, 1);
    auto combo = space.add(space.scaled(c0, 3, Monomial::variable(2)), space.scaled(c1, 5, Monomial::variable(0)));
    EXPECT_TRUE(g.contains(combo));
    gb::Vec<K> e0{{Monomial::variable(0), 0, 1}};
    EXPECT_FALSE(g.contains(e0));
    for (const auto& el : g.elements()) EXPECT_TRUE(g.normal_form(el).empty());
}

TEST(Groebner, MinimalInputsDropRedundantGenerators) {
    auto R = make_ring(K(7), 2, 1);
    GradedMap<K> m(GradedFreeModule<K>(R, {1, 1, 2, 2}), GradedFreeModule<K>(R, {0}), 0);
    m.set(0, 0, parse_polynomial(R, "t1"));
    m.set(0, 1, parse_polynomial(R, "t2"));
    m.set(0, 2, parse_polynomial(R, "t1*t2 + t2^2"));
    m.set(0, 3, parse_polynomial(R, "t1^2"));
    auto g = basis_of(m, gb::Options{true, true});
    EXPECT_EQ(g.minimal_inputs(), (std::vector<std::size_t>{0, 1}));
}

TEST(Groebner, RejectsInhomogeneousInput) {
    auto R = make_ring(K(7), 2, 1);
    gb::FreeSpace<K> space(R, {0});
    gb::Vec<K> v{{Monomial::variable(0), 0, 1}, {Monomial{}, 0, 1}};
    EXPECT_THROW(gb::GroebnerBasis<K>(space, {space.normalize(v)}), Error);
}

// Property: standard monomials count the quotient, checked against dense
// linear algebra in each degree.
TEST(Groebner, QuotientDimensionsMatchLinearAlgebra) {
    std::mt19937 rng(7);
    for (int trial = 0; trial < 25; ++trial) {
        std::size_t n = 2 + rng() % 3;
        int w = 1 + static_cast<int>(rng() % 2);
        auto R = make_ring(K(31), n, w);
        std::vector<long> tgt, src;
        for (std::size_t i = 0, r = 1 + rng() % 3; i < r; ++i) tgt.push_back(w * static_cast<long>(rng() % 2));
        for (std::size_t j = 0, c = 1 + rng() % 4; j < c; ++j) src.push_back(w * static_cast<long>(1 + rng() % 2));
        auto m = testutil::random_map(rng, R, src, tgt, 0);
        auto g = basis_of(m);
        for (long d = 0; d <= 5 * w; ++d) {
            std::int64_t free_dim = static_cast<std::int64_t>(oracle::degree_basis(m.target(), d).size());
            std::int64_t standard = 0;
            for (std::uint32_t c = 0; c < tgt.size(); ++c) {
                long rest = d - tgt[c];
                if (rest < 0 || rest % w) continue;
                standard += count_standard_monomials(g.leading_monomials(c), n, static_cast<unsigned>(rest / w));
            }
            EXPECT_EQ(free_dim - standard, static_cast<std::int64_t>(oracle::image_dimension(m, d)))
                << "trial " << trial << " degree " << d;
        }
    }
}
