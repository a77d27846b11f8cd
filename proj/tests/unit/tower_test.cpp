#include <gen.hpp>

#include <ramfield/errors.hpp>
#include <ramfield/tower.hpp>
#include <ramfield/tower_builder.hpp>

#include <gtest/gtest.h>

using namespace ramfield;

namespace {

const Tower& tower52() {
    static const Tower T = [] {
        TowerSpec s;
        s.p = 5;
        s.n = 2;
        s.d = 2;
        s.prec = 10;
        s.source = TowerSource::explicit_p2;
        return build_tower(s).tower;
    }();
    return T;
}

TowerElement random_element(testgen::Gen& g, const Tower& T, int level) {
    TowerElement x = T.zero(level);
    const long dim = T.dim(level);
    for (int k = 0; k < 3; ++k)
        x = T.add(x, T.monomial(g.range(0, dim - 1), Int(g.range(-40, 40)), g.range(0, 1), level));
    return x;
}

// zero at the working precision, or exactly zero
bool vanishes(const Tower& T, const TowerElement& x) {
    const TowerValuation v = T.valuation(x);
    return !v.exact || v.value >= kInfVal;
}

}  // namespace

TEST(Tower, GeneratorsSatisfyTheirEquations) {
    const Tower& T = tower52();
    for (int k = 1; k <= 2; ++k) {
        const TowerElement b = T.beta(k);
        const TowerElement lhs = T.sub(T.pow(b, 5), b);
        EXPECT_TRUE(vanishes(T, T.sub(lhs, T.c(k)))) << "level " << k;
    }
}

TEST(Tower, RingAxiomsOnRandomElements) {
    const Tower& T = tower52();
    testgen::Gen g(20);
    for (int trial = 0; trial < 60; ++trial) {
        const TowerElement x = random_element(g, T, 2), y = random_element(g, T, 2), z = random_element(g, T, 2);
        EXPECT_TRUE(vanishes(T, T.sub(T.mul(T.add(x, y), z), T.add(T.mul(x, z), T.mul(y, z)))));
        EXPECT_TRUE(vanishes(T, T.sub(T.mul(T.mul(x, y), z), T.mul(x, T.mul(y, z)))));
        EXPECT_TRUE(vanishes(T, T.sub(T.mul(x, y), T.mul(y, x))));
        if (!x.is_zero()) {
            const TowerElement r = T.sub(T.mul(x, T.inv(x)), T.one(2));
            EXPECT_TRUE(vanishes(T, r)) << T.valuation(r).value << " prec " << r.prec << " e " << T.e();
        }
    }
}

TEST(Tower, ValuationIsMultiplicativeAndMatchesNorm) {
    const Tower& T = tower52();
    testgen::Gen g(21);
    for (int trial = 0; trial < 40; ++trial) {
        const TowerElement x = random_element(g, T, 2), y = random_element(g, T, 2);
        if (x.is_zero() || y.is_zero()) continue;
        const TowerValuation vx = T.valuation(x), vy = T.valuation(y), vxy = T.valuation(T.mul(x, y));
        ASSERT_TRUE(vx.exact && vy.exact && vxy.exact);
        EXPECT_EQ(vxy.value, vx.value + vy.value);
        // determinant route, independent of the termwise valuation
        EXPECT_EQ(T.norm_valuation(x), boost::rational<long>(vx.value, T.e()));
    }
}

TEST(Tower, GeneratorValuations) {
    const Tower& T = tower52();
    EXPECT_EQ(T.beta_valuation(1), boost::rational<long>(-1, 5));
    EXPECT_EQ(T.beta_valuation(2), boost::rational<long>(-6, 25));
    EXPECT_EQ(T.norm_valuation(T.beta(2)), boost::rational<long>(-6, 25));
}

TEST(Tower, RejectsUnramifiedLevels) {
    Tower T(5, 1, 6);
    EXPECT_THROW(T.add_level(T.from_int(3, 0)), NotTotallyRamified);         // v(c) = 0
    EXPECT_THROW(T.add_level(T.from_rational(1, 5, 0)), NotTotallyRamified);  // slope -5/5 is integral
    EXPECT_NO_THROW(T.add_level(T.from_rational(1, 2, 0)));                   // slope -2/5
}

TEST(Tower, ResidueAndDominantIndex) {
    const Tower& T = tower52();
    const TowerElement x = T.add(T.from_int(3, 2), T.monomial(1, 5, 0, 2));  // 3 + 5 b_1
    EXPECT_EQ(T.residue(x), 3);
    EXPECT_EQ(T.dominant_index(x), 0);
    EXPECT_EQ(T.dominant_index(T.beta(1)), 1);
    EXPECT_EQ(T.dominant_index(T.zero(2)), -1);
}
