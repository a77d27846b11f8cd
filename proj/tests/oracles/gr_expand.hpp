#pragma once

// Direct expansion of both sides of
//   g(X) +_G [p]_G R(g(X), T) = g(X +_G R([p]_G X, T^p))
// over Z/M in plain (X-exponent, T-exponent) dictionaries. Written from the
// equation itself; uses nothing from the library but the modulus.
//
// Truncation: every product drops X-degree > xcap, and F is cut at total
// degree fdeg. With g having lowest exponent -s and M = p^N, a coefficient
// at X^k is exact when k <= xcap - (N-1)(s+1) and k <= fdeg - (N-1)(s+1),
// because any monomial surviving mod M uses at most N-1 factors with a
// negative exponent (each carries a factor p), and each such factor sits
// s+1 below the X it replaces.

#include "lt_law.hpp"

#include <cstdint>
#include <map>
#include <stdexcept>
#include <utility>

namespace oracle {

using i64 = std::int64_t;
// (X-exponent, T-exponent) -> residue in [0, M)
using Poly2 = std::map<std::pair<int, int>, i64>;

struct Ring {
    i64 M;
    int xcap;

    i64 red(i64 v) const {
        v %= M;
        return v < 0 ? v + M : v;
    }

    void acc(Poly2& a, int x, int t, i64 c) const {
        if (x > xcap) return;
        i64& slot = a[{x, t}];
        slot = red(slot + c);
        if (slot == 0) a.erase({x, t});
    }

    Poly2 add(Poly2 a, const Poly2& b, i64 sb = 1) const {
        for (const auto& [k, v] : b) acc(a, k.first, k.second, red(sb * v));
        return a;
    }

    Poly2 scale(const Poly2& a, i64 c) const {
        Poly2 r;
        for (const auto& [k, v] : a) acc(r, k.first, k.second, red(v * red(c)));
        return r;
    }

    Poly2 mul(const Poly2& a, const Poly2& b) const {
        Poly2 r;
        for (const auto& [ka, va] : a)
            for (const auto& [kb, vb] : b)
                acc(r, ka.first + kb.first, ka.second + kb.second, va * vb % M);
        return r;
    }

    Poly2 one() const { return {{{0, 0}, 1}}; }

    Poly2 pow(const Poly2& a, int e) const {
        Poly2 r = one();
        for (int k = 0; k < e; ++k) r = mul(r, a);
        return r;
    }

    Poly2 t_subst(const Poly2& a, int m) const {
        Poly2 r;
        for (const auto& [k, v] : a) acc(r, k.first, k.second * m, v);
        return r;
    }

    // X^-k (1 + u)^-k with u of positive X-degree or divisible by p; the
    // geometric series is summed until its terms vanish.
    Poly2 inv_power(const Poly2& c, int k) const {
        const auto lead = c.find({1, 0});
        if (lead == c.end() || lead->second != 1) throw std::logic_error("oracle: leading term must be X");
        Poly2 u;
        for (const auto& [key, v] : c)
            if (key != std::pair<int, int>{1, 0}) acc(u, key.first - 1, key.second, v);
        Poly2 inv = one(), term = one();
        for (int n = 1;; ++n) {
            term = scale(mul(term, u), -1);
            if (term.empty()) break;
            if (n > 64 * (xcap + 2)) throw std::logic_error("oracle: inverse series did not settle");
            inv = add(inv, term);
        }
        Poly2 r = pow(inv, k), out;
        for (const auto& [key, v] : r) acc(out, key.first - k, key.second, v);
        return out;
    }

    // a^e for any sign of e (a = X(1 + u) when e < 0).
    Poly2 power(const Poly2& a, int e) const { return e >= 0 ? pow(a, e) : inv_power(a, -e); }
};

// sum_e coeff_e(T) a^e; coeffs keyed by X-exponent, each a T-polynomial.
using XPoly = std::map<int, std::map<int, i64>>;

inline Poly2 eval_outer(const Ring& Z, const XPoly& f, const Poly2& a) {
    Poly2 r;
    for (const auto& [e, ct] : f) {
        const Poly2 pw = Z.power(a, e);
        for (const auto& [t, c] : ct)
            for (const auto& [k, v] : pw) Z.acc(r, k.first, k.second + t, v * Z.red(c) % Z.M);
    }
    return r;
}

// F(a, b) with F given modulo M through total degree fdeg.
inline Poly2 eval_law(const Ring& Z, const std::map<std::pair<int, int>, i64>& F, const Poly2& a,
                      const Poly2& b) {
    std::map<int, Poly2> pa, pb;
    Poly2 r;
    for (const auto& [ij, c] : F) {
        auto ia = pa.find(ij.first);
        if (ia == pa.end()) ia = pa.emplace(ij.first, Z.pow(a, ij.first)).first;
        auto ib = pb.find(ij.second);
        if (ib == pb.end()) ib = pb.emplace(ij.second, Z.pow(b, ij.second)).first;
        r = Z.add(r, Z.scale(Z.mul(ia->second, ib->second), c));
    }
    return r;
}

inline std::map<std::pair<int, int>, i64> law_mod(int p, int fdeg, i64 M) {
    std::map<std::pair<int, int>, i64> out;
    for (const auto& [k, q] : lt_law(p, fdeg)) {
        const i64 r = static_cast<i64>(residue_mod(q, BigInt(M)));
        if (r != 0) out[k] = r;
    }
    return out;
}

// LHS - RHS of the functional equation modulo M.
inline Poly2 gr_difference(int p, const XPoly& g, const XPoly& R, i64 M, int xcap, int fdeg) {
    const Ring Z{M, xcap};
    const auto F = law_mod(p, fdeg, M);
    const Poly2 X{{{1, 0}, 1}};
    const Poly2 pX{{{1, 0}, Z.red(p)}, {{p, 0}, 1}};  // [p](X)

    const Poly2 G = eval_outer(Z, g, X);
    const Poly2 RG = eval_outer(Z, R, G);
    const Poly2 B = Z.add(Z.scale(RG, p), Z.pow(RG, p));  // [p](R(g, T))
    const Poly2 lhs = eval_law(Z, F, G, B);

    XPoly Rp;
    for (const auto& [e, ct] : R)
        for (const auto& [t, c] : ct) Rp[e][t * p] = c;
    const Poly2 Y = eval_outer(Z, Rp, pX);
    const Poly2 C = eval_law(Z, F, X, Y);
    const Poly2 rhs = eval_outer(Z, g, C);
    return Z.add(lhs, rhs, -1);
}

// The degree-p^2 data read off the displayed congruence, with 1/2 taken
// modulo M: g_{-1} = p (T^{1-p} - 1)/2 at X^{2-p}, g_0 = 1 + g_{-1}(1 - T^p)
// at X, R = T X.
inline std::pair<XPoly, XPoly> displayed_pair(int p, i64 M) {
    const Ring Z{M, 0};
    i64 half = 1;
    while (Z.red(2 * half) != 1) ++half;
    const i64 h = Z.red(p * half);
    XPoly g, R;
    g[2 - p][1 - p] = h;
    g[2 - p][0] = Z.red(-h);
    // (h T^{1-p} - h)(1 - T^p) = h T^{1-p} - h T - h + h T^p
    std::map<int, i64>& g0 = g[1];
    g0[0] = Z.red(1 - h);
    g0[1 - p] = h;
    g0[1] = Z.red(-h);
    g0[p] = h;
    R[1][1] = 1;
    return {g, R};
}

}  // namespace oracle
