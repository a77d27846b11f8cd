#include <ramfield/errors.hpp>
#include <ramfield/laurent.hpp>
#include <ramfield/series.hpp>
#include <ramfield/tower_builder.hpp>

#include <cmath>
#include <cstdlib>

namespace ramfield {

const char* to_string(TowerSource s) {
    switch (s) {
        case TowerSource::solved_gr: return "solved-gr";
        case TowerSource::builtin_p2: return "builtin-p2";
        case TowerSource::explicit_p2: return "explicit-p2";
        case TowerSource::custom: return "custom";
    }
    return "custom";
}

const char* to_string(EvalConvention c) { return c == EvalConvention::direct ? "direct" : "inverse"; }

TowerSource tower_source_from_string(const std::string& s) {
    if (s == "solved-gr" || s == "solved_gr") return TowerSource::solved_gr;
    if (s == "builtin-p2" || s == "builtin_p2") return TowerSource::builtin_p2;
    if (s == "explicit-p2" || s == "explicit_p2") return TowerSource::explicit_p2;
    if (s == "custom") return TowerSource::custom;
    throw InvalidArgument("unknown tower source '" + s + "'");
}

EvalConvention eval_convention_from_string(const std::string& s) {
    if (s == "direct") return EvalConvention::direct;
    if (s == "inverse") return EvalConvention::inverse;
    throw InvalidArgument("unknown eval convention '" + s + "'");
}

namespace {

long scalar_digits(const Tower& T) { return T.prec() + 8; }

PadicScalar unit_d(int p, const Int& d, long rel) {
    if (vp(d, p) != 0) throw InvalidArgument("d must be a p-adic unit");
    return PadicScalar::from_int(p, d, rel);
}

// d^{p^k}, inverted for the inverse convention.
PadicScalar argument(int p, const Int& d, int k, EvalConvention conv, long rel) {
    PadicScalar a = unit_d(p, d, rel);
    for (int i = 0; i < k; ++i) a = a.pow(p);
    return conv == EvalConvention::direct ? a : a.inv();
}

// Sum c_t x^t with the stored residues read as exact integers.
PadicScalar eval_representative(const Laurent& f, const PadicScalar& x, long rel) {
    PadicScalar acc = PadicScalar::zero(f.p(), kInfVal);
    for (const auto& [t, c] : f.terms()) acc = acc + PadicScalar::from_int(f.p(), Int(c), rel) * x.pow(t);
    return acc;
}

}  // namespace

TowerElement build_rhs(const Tower& T, const GRPair& pair, const Int& d, int n, int j, EvalConvention conv) {
    const int p = T.p();
    if (pair.p != p) throw InvalidArgument("pair and tower over different primes");
    if (j < 1 || j > n) throw InvalidArgument("level outside 1..n");
    if (T.levels() < j - 1) throw InvalidArgument("previous levels missing");
    const long rel = scalar_digits(T);
    const PadicScalar arg = argument(p, d, n - j, conv, rel);
    TowerElement c = T.zero(j - 1);
    if (j == 1) {
        // -p^{-1} sum_{i>=0} S_i(arg) (-p)^i; term i has valuation >= i - 1
        const int i_max = static_cast<int>(T.prec()) + 1;
        const int Ns = std::min(static_cast<int>(T.prec()) + 2, laurent_max_prec(p));
        const XSeries S = xseries_reversion(pair.R.at_prec(Ns), i_max);
        for (const auto& [i, Si] : S.entries()) {
            if (i > i_max) break;
            PadicScalar s = eval_representative(Si, arg, rel) * PadicScalar::p_power(p, i - 1, rel);
            if ((i + 1) % 2) s = -s;
            c = T.add(c, T.from_scalar(s, 0));
        }
        return c;
    }
    // each term i gains about |i| (1 - p^{1-j} - 2/p) over its neighbour
    const boost::rational<long> margin =
        boost::rational<long>(1) - boost::rational<long>(1, static_cast<long>(std::pow(p, j - 1))) -
        boost::rational<long>(2, p);
    if (margin <= 0) throw DivergentSum("no positive growth margin for the g-sum at level " + std::to_string(j));
    const TowerElement b = T.beta(j - 1);
    for (const auto& [i, gi] : pair.g.entries()) {
        if (gi.is_zero()) continue;
        PadicScalar s = eval_representative(gi, arg, rel + std::abs(i)) * PadicScalar::p_power(p, i - 1, rel);
        if ((i + 1) % 2) s = -s;
        if (s.is_zero()) continue;
        const long e = static_cast<long>(i) * (p - 1) + 1;
        c = T.add(c, T.mul(T.from_scalar(s, j - 1), T.pow(b, e)));
    }
    return c;
}

TowerElement explicit_p2_rhs(const Tower& T, const Int& d, int j) {
    const int p = T.p();
    const int n = T.height();
    if (n > 2) throw UnsupportedVariant("explicit equations exist for n <= 2 only");
    const long rel = scalar_digits(T);
    const PadicScalar dd = unit_d(p, d, rel);
    const PadicScalar inv_p = PadicScalar::p_power(p, -1, rel);
    if (j == 1) {
        const PadicScalar a = n == 1 ? dd : dd.pow(p);
        return T.from_scalar(-(inv_p * a), 0);
    }
    if (j != 2) throw InvalidArgument("explicit equations have levels 1 and 2");
    // h = (d^{1-p} - 1)/2
    const PadicScalar one = PadicScalar::from_int(p, 1, rel);
    const PadicScalar h = (dd.pow(1 - p) - one) / PadicScalar::from_int(p, 2, rel);
    const TowerElement y = T.beta(1);
    TowerElement c = T.mul(T.from_scalar(-inv_p, 1), y);
    if (!h.is_zero()) {
        c = T.add(c, T.mul(T.from_scalar(inv_p * h, 1), T.pow(y, 2 - p)));
        c = T.sub(c, T.mul(T.from_scalar(h * (one - dd.pow(p)), 1), y));
    }
    return c;
}

namespace {

TowerElement custom_rhs(const Tower& T, const std::vector<RhsTerm>& terms, int j) {
    TowerElement c = T.zero(j - 1);
    for (const auto& t : terms) {
        if (static_cast<int>(t.exps.size()) > j - 1) throw InvalidArgument("custom term uses b_k with k >= j");
        long a = 0, mult = 1;
        for (int e : t.exps) {
            if (e < 0 || e >= T.p()) throw InvalidArgument("custom exponents must lie in [0, p)");
            a += e * mult;
            mult *= T.p();
        }
        c = T.add(c, T.monomial(a, t.num, t.D, j - 1));
    }
    return c;
}

}  // namespace

BuiltTower build_tower(const TowerSpec& spec) {
    if (spec.n < 1) throw InvalidArgument("n must be >= 1");
    BuiltTower bt{spec, Tower(spec.p, spec.n, spec.prec), {}};
    Tower& T = bt.tower;
    std::optional<GRPair> pair = spec.pair;
    if (spec.source == TowerSource::builtin_p2 && !pair) pair = builtin_gr_p2(spec.p);
    if (spec.source == TowerSource::solved_gr && !pair) throw InvalidArgument("solved-gr source needs a pair");
    if (spec.source == TowerSource::custom && static_cast<int>(spec.custom.size()) != spec.n)
        throw InvalidArgument("custom source needs n right-hand sides");
    bt.spec.pair = pair;

    boost::rational<long> expected(0);
    long pj = 1;
    for (int j = 1; j <= spec.n; ++j) {
        TowerElement c;
        switch (spec.source) {
            case TowerSource::solved_gr:
            case TowerSource::builtin_p2: c = build_rhs(T, *pair, spec.d, spec.n, j, spec.convention); break;
            case TowerSource::explicit_p2: c = explicit_p2_rhs(T, spec.d, j); break;
            case TowerSource::custom: c = custom_rhs(T, spec.custom[static_cast<std::size_t>(j - 1)], j); break;
        }
        T.add_level(c);
        LevelCertificate cert;
        cert.level = j;
        cert.v_c = boost::rational<long>(T.valuation(T.c(j)).value, T.e());
        cert.newton_single_segment = true;  // add_level throws otherwise
        cert.beta_valuation = T.norm_valuation(T.beta(j));
        pj *= spec.p;
        expected -= boost::rational<long>(1, pj);
        cert.expected = expected;
        cert.valuation_ok = cert.beta_valuation == expected && cert.v_c == expected * static_cast<long>(spec.p);
        bt.levels.push_back(cert);
    }
    return bt;
}

ContainedZero contained_zero(const BuiltTower& bt, EvalConvention conv) {
    const Tower& T = bt.tower;
    const int p = T.p();
    const long rel = scalar_digits(T);
    const PadicScalar a = argument(p, bt.spec.d, T.levels() - 1, conv, rel);
    TowerPoly f(static_cast<std::size_t>(p + 1), T.zero(0));
    f[0] = T.from_scalar(a * PadicScalar::p_power(p, -1, rel), 0);
    f[1] = T.from_int(-1, 0);
    f[static_cast<std::size_t>(p)] = T.one(0);
    return {conv, find_roots(T, f, T.levels())};
}

}  // namespace ramfield
