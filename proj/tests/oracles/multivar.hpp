#pragma once

// Truncated polynomials in X, Y, Z over Z/M, keyed by exponent triples and
// cut at total degree `deg`. Used to test group-law identities on the
// library's coefficient table without going through its series kernel.

#include "lt_law.hpp"

#include <array>
#include <map>

namespace oracle {

using Key3 = std::array<int, 3>;
using Poly3 = std::map<Key3, BigInt>;

struct Trunc3 {
    BigInt M;
    int deg;

    void acc(Poly3& a, const Key3& k, const BigInt& c) const {
        if (k[0] + k[1] + k[2] > deg) return;
        BigInt& s = a[k];
        s = (s + c) % M;
        if (s < 0) s += M;
        if (s == 0) a.erase(k);
    }

    Poly3 add(Poly3 a, const Poly3& b) const {
        for (const auto& [k, v] : b) acc(a, k, v);
        return a;
    }

    Poly3 mul(const Poly3& a, const Poly3& b) const {
        Poly3 r;
        for (const auto& [ka, va] : a)
            for (const auto& [kb, vb] : b) acc(r, {ka[0] + kb[0], ka[1] + kb[1], ka[2] + kb[2]}, va * vb);
        return r;
    }

    static Poly3 var(int k) {
        Key3 e{0, 0, 0};
        e[static_cast<std::size_t>(k)] = 1;
        return {{e, BigInt(1)}};
    }

    // sum c_ab a^i b^j
    Poly3 apply(const std::map<std::pair<int, int>, BigInt>& F, const Poly3& a, const Poly3& b) const {
        std::map<int, Poly3> pa{{0, {{Key3{0, 0, 0}, BigInt(1)}}}}, pb = pa;
        auto pw = [&](std::map<int, Poly3>& cache, const Poly3& x, int e) -> const Poly3& {
            for (int k = static_cast<int>(cache.size()); k <= e; ++k) cache[k] = mul(cache[k - 1], x);
            return cache[e];
        };
        Poly3 r;
        for (const auto& [ij, c] : F) {
            Poly3 t = mul(pw(pa, a, ij.first), pw(pb, b, ij.second));
            for (const auto& [k, v] : t) acc(r, k, v * c);
        }
        return r;
    }

    // [p](x) = p x + x^p
    Poly3 mul_p(int p, const Poly3& x) const {
        Poly3 r;
        for (const auto& [k, v] : x) acc(r, k, v * p);
        Poly3 xp = x;
        for (int k = 1; k < p; ++k) xp = mul(xp, x);
        return add(r, xp);
    }
};

}  // namespace oracle
