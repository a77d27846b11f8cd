#include <gen.hpp>

#include <ramfield/errors.hpp>
#include <ramfield/k2top.hpp>

#include <gtest/gtest.h>

using namespace ramfield;

namespace {

long naive_vp(long j, int p) {
    long v = 0;
    for (j = std::abs(j); j % p == 0; j /= p) ++v;
    return v;
}

K2Element random_k2(testgen::Gen& g, int p, long prec) {
    std::vector<std::pair<long, Int>> raw;
    const int terms = static_cast<int>(g.range(0, 5));
    for (int k = 0; k < terms; ++k) raw.emplace_back(g.range(-30, 30), Int(g.range(-200, 200)));
    return k2_normal_form(p, prec, raw);
}

}  // namespace

TEST(K2, GeneratorOrders) {
    const int p = 5;
    EXPECT_FALSE(generator_order(p, 0).has_value());
    EXPECT_EQ(*generator_order(p, 5), 25);
    EXPECT_EQ(*generator_order(p, -50), 125);
    for (long j = -125; j <= 125; ++j) {
        if (j == 0) continue;
        long order = p;
        for (long k = naive_vp(j, p); k > 0; --k) order *= p;
        const K2Element g = k2_generator(p, j, 10);
        EXPECT_TRUE(k2_is_zero(k2_scalar_mul(order, g))) << "j = " << j;
        EXPECT_FALSE(k2_is_zero(k2_scalar_mul(order / p, g))) << "j = " << j;
    }
}

TEST(K2, FreePartHasNoTorsion) {
    const K2Element g0 = k2_generator(5, 0, 10);
    for (long c : {1L, 5L, 25L, 625L}) EXPECT_FALSE(k2_is_zero(k2_scalar_mul(c, g0)));
}

TEST(K2, AbelianGroupAxioms) {
    testgen::Gen g(50);
    const int p = 5;
    for (int trial = 0; trial < 2000; ++trial) {
        const K2Element x = random_k2(g, p, 8), y = random_k2(g, p, 8), z = random_k2(g, p, 8);
        EXPECT_TRUE(k2_equal(k2_add(x, y), k2_add(y, x)));
        EXPECT_TRUE(k2_equal(k2_add(k2_add(x, y), z), k2_add(x, k2_add(y, z))));
        EXPECT_TRUE(k2_is_zero(k2_add(x, k2_neg(x))));
        EXPECT_TRUE(k2_equal(k2_add(x, k2_zero(p, 8)), x));
    }
}

TEST(K2, NormalFormIsUniqueAndIdempotent) {
    testgen::Gen g(51);
    const int p = 5;
    for (int trial = 0; trial < 1000; ++trial) {
        std::vector<std::pair<long, Int>> raw;
        for (int k = 0; k < 4; ++k) raw.emplace_back(g.range(-30, 30), Int(g.range(-99, 99)));
        // shift each torsion coordinate by a multiple of its order, split across entries
        auto shifted = raw;
        for (const auto& [j, c] : raw) {
            if (j == 0) continue;
            shifted.emplace_back(j, *generator_order(p, j) * g.range(-3, 3));
        }
        const K2Element a = k2_normal_form(p, 8, raw), b = k2_normal_form(p, 8, shifted);
        EXPECT_EQ(a.torsion, b.torsion);
        EXPECT_TRUE(k2_equal(a, b));
        std::vector<std::pair<long, Int>> again;
        again.emplace_back(0, a.n0.is_zero() ? Int(0) : a.n0.lift());
        for (const auto& [j, c] : a.torsion) again.emplace_back(j, c);
        EXPECT_TRUE(k2_equal(k2_normal_form(p, 8, again), a));
        for (const auto& [j, c] : a.torsion) {
            EXPECT_GT(c, 0);
            EXPECT_LT(c, *generator_order(p, j));
        }
    }
}

TEST(K2, ScalarMultiplicationOfFreePartKeepsDigits) {
    // p^k n0 keeps relative precision, so it never collapses to zero
    const K2Element x = k2_generator(5, 0, 3);
    const K2Element y = k2_scalar_mul(pow_p(5, 10), x);
    EXPECT_FALSE(k2_is_zero(y));
    EXPECT_EQ(y.n0.val(), 10);
}
