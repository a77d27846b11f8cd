#include <gen.hpp>

#include <ramfield/errors.hpp>
#include <ramfield/galois.hpp>
#include <ramfield/roots.hpp>
#include <ramfield/tower_builder.hpp>

#include <gtest/gtest.h>

using namespace ramfield;

namespace {

BuiltTower explicit_tower(int n, long d, long prec) {
    TowerSpec s;
    s.p = 5;
    s.n = n;
    s.d = d;
    s.prec = prec;
    s.source = TowerSource::explicit_p2;
    return build_tower(s);
}

TowerPoly as_equation(const Tower& T, const TowerElement& c) {
    TowerPoly f(6, T.zero(0));
    f[0] = T.neg(c);
    f[1] = T.from_int(-1, 0);
    f[5] = T.one(0);
    return f;
}

bool vanishes(const Tower& T, const TowerElement& x) {
    const TowerValuation v = T.valuation(x);
    return !v.exact || v.value >= kInfVal;
}

// Cayley table sanity independent of how the table was produced.
void expect_group(const std::vector<std::vector<int>>& m) {
    const std::size_t N = m.size();
    for (std::size_t a = 0; a < N; ++a) {
        std::vector<int> row(N, 0), col(N, 0);
        for (std::size_t b = 0; b < N; ++b) {
            ++row[static_cast<std::size_t>(m[a][b])];
            ++col[static_cast<std::size_t>(m[b][a])];
        }
        EXPECT_EQ(std::count(row.begin(), row.end(), 1), static_cast<long>(N)) << "row " << a;
        EXPECT_EQ(std::count(col.begin(), col.end(), 1), static_cast<long>(N)) << "col " << a;
        EXPECT_EQ(m[0][a], static_cast<int>(a));
        EXPECT_EQ(m[a][0], static_cast<int>(a));
    }
    for (std::size_t a = 0; a < N; ++a)
        for (std::size_t b = 0; b < N; ++b)
            for (std::size_t c = 0; c < N; ++c)
                EXPECT_EQ(m[static_cast<std::size_t>(m[a][b])][c], m[a][static_cast<std::size_t>(m[b][c])]);
}

}  // namespace

TEST(Roots, LevelOneEquationSplits) {
    const BuiltTower bt = explicit_tower(1, 1, 8);
    const Tower& T = bt.tower;
    const auto roots = find_roots(T, as_equation(T, T.c(1)), 1);
    ASSERT_EQ(roots.size(), 5u);
    int hits = 0;
    for (const auto& r : roots) {
        EXPECT_TRUE(r.hensel);
        EXPECT_TRUE(vanishes(T, poly_eval(T, as_equation(T, T.c(1)), r.value)));
        if (vanishes(T, T.sub(r.value, T.beta(1)))) ++hits;
    }
    EXPECT_EQ(hits, 1);
    EXPECT_TRUE(std::is_sorted(roots.begin(), roots.end(),
                               [](const auto& a, const auto& b) { return canonical_less(a.value, b.value); }));
}

TEST(Roots, NoRootsForIrreducibleEquation) {
    // X^5 - X - 1/5 over Q_5 itself has no root (the extension is ramified)
    Tower T(5, 1, 6);
    TowerPoly f(6, T.zero(0));
    f[0] = T.from_rational(-1, 1, 0);
    f[1] = T.from_int(-1, 0);
    f[5] = T.one(0);
    EXPECT_TRUE(find_roots(T, f, 0).empty());
}

TEST(Roots, TaylorShiftAgreesWithEvaluation) {
    const BuiltTower bt = explicit_tower(1, 2, 8);
    const Tower& T = bt.tower;
    testgen::Gen g(30);
    const TowerPoly f = as_equation(T, T.c(1));
    for (int trial = 0; trial < 20; ++trial) {
        const TowerElement x0 = T.monomial(g.range(0, 4), Int(g.range(-9, 9)), 0, 1);
        const TowerElement w = T.monomial(g.range(0, 4), Int(g.range(-9, 9)), 0, 1);
        const TowerPoly h = taylor_shift(T, f, x0);
        EXPECT_TRUE(vanishes(T, T.sub(poly_eval(T, h, w), poly_eval(T, f, T.add(x0, w)))));
    }
}

TEST(Galois, LevelOneGroupIsCyclicOfOrderP) {
    for (long d : {1L, 2L}) {
        const BuiltTower bt = explicit_tower(1, d, 8);
        const AutomorphismTable tab = automorphism_table(bt.tower);
        ASSERT_EQ(tab.images.size(), 5u);
        EXPECT_TRUE(tab.cyclic);
        EXPECT_EQ(tab.generator_order, 5);
        EXPECT_EQ(std::count(tab.order.begin(), tab.order.end(), 5), 4);
        EXPECT_EQ(tab.order[0], 1);
        expect_group(tab.compose);
    }
}

TEST(Galois, TowerEqualsItself) {
    const BuiltTower bt = explicit_tower(2, 1, 10);
    const TowerEquality eq = towers_equal(bt.tower, bt.tower, 2);
    EXPECT_TRUE(eq.equal);
    ASSERT_EQ(eq.witness.size(), 2u);
    for (const auto& w : eq.witness) EXPECT_TRUE(w.infinite);
}

TEST(AsClass, DegreePRule) {
    const int p = 5;
    auto s = [&](long num) { return PadicScalar::from_rational(p, num, 5, 10); };
    EXPECT_EQ(as_equiv_class(s(1), s(1 + 25)), AsClass::equal);               // diff 5: v = 1
    EXPECT_EQ(as_equiv_class(s(1), s(6)), AsClass::equal_over_unramified);   // diff 1: v = 0
    EXPECT_EQ(as_equiv_class(s(1), s(2)), AsClass::unclassified);            // diff 1/5
    EXPECT_THROW(as_equiv_class(s(5), s(1)), InvalidArgument);
}
