#include <ramfield/errors.hpp>
#include <ramfield/formal_group.hpp>

#include <algorithm>
#include <vector>

namespace ramfield {

PadicScalar BivarSeries::coeff(int a, int b) const {
    auto it = coeffs.find({a, b});
    if (it == coeffs.end()) return PadicScalar::zero(p, kInfVal);
    return it->second;
}

Laurent::Coeff BivarSeries::residue(int a, int b, int prec) const {
    auto it = coeffs.find({a, b});
    if (it == coeffs.end()) return 0;
    const PadicScalar& c = it->second;
    if (c.is_zero()) return 0;
    if (c.val() < 0) throw InvalidArgument("non-integral group-law coefficient");
    if (c.absprec() < prec)
        throw PrecisionExhausted("group law known only mod p^" + std::to_string(c.absprec()) +
                                 ", need p^" + std::to_string(prec));
    return static_cast<Laurent::Coeff>(mod(c.lift(), pow_p(p, prec)));
}

namespace {

// Homogeneous polynomial of degree k: entry a is the coefficient of X^a Y^{k-a}.
using Homog = std::vector<Int>;

Homog homog_mul(const Homog& u, const Homog& v, const Int& M) {
    if (u.empty() || v.empty()) return {};
    Homog r(u.size() + v.size() - 1, Int(0));
    for (std::size_t i = 0; i < u.size(); ++i) {
        if (u[i] == 0) continue;
        for (std::size_t j = 0; j < v.size(); ++j)
            if (v[j] != 0) r[i + j] += u[i] * v[j];
    }
    for (auto& x : r) x = mod(x, M);
    return r;
}

bool homog_zero(const Homog& h) {
    return std::all_of(h.begin(), h.end(), [](const Int& x) { return x == 0; });
}

}  // namespace

GroupLaw build_group_law(int p, int maxdeg, int prec) {
    require_prime(p);
    if (maxdeg < 1) throw InvalidArgument("maxdeg must be >= 1");
    if (prec < 1) throw InvalidArgument("precision must be >= 1");
    // Each nonzero layer divides by p once; layers live in degrees = 1 mod (p-1).
    const int layers = (maxdeg - 1) / (p - 1);
    const int W = prec + layers + 1;
    const Int MW = pow_p(p, W);
    const Int P = p;

    // F[k] is the degree-k layer.
    std::vector<Homog> F(static_cast<std::size_t>(maxdeg) + 1);
    F[1] = {Int(1), Int(1)};  // Y + X
    // pw[m][k]: degree-k layer of F^m, m = 2..p.
    std::vector<std::vector<Homog>> pw(static_cast<std::size_t>(p) + 1,
                                       std::vector<Homog>(static_cast<std::size_t>(maxdeg) + 1));
    auto power_layer = [&](int m, int k) -> const Homog& {
        // F^m in degree k from layers of degree < k (valid when m >= 2).
        Homog& slot = pw[m][k];
        if (!slot.empty() || k < m) return slot;
        Homog acc(static_cast<std::size_t>(k) + 1, Int(0));
        for (int d = 1; d <= k - (m - 1); ++d) {
            if (F[d].empty()) continue;
            const Homog& rest = (m == 2) ? F[k - d] : pw[m - 1][k - d];
            if (rest.empty()) continue;
            Homog prod = homog_mul(F[d], rest, MW);
            for (std::size_t a = 0; a < prod.size(); ++a) acc[a] += prod[a];
        }
        for (auto& x : acc) x = mod(x, MW);
        slot = homog_zero(acc) ? Homog{} : acc;
        return slot;
    };

    std::vector<std::vector<Int>> binom(static_cast<std::size_t>(maxdeg) + 1);
    for (int n = 0; n <= maxdeg; ++n) {
        binom[n].assign(static_cast<std::size_t>(n) + 1, Int(1));
        for (int k = 1; k < n; ++k) binom[n][k] = binom[n - 1][k - 1] + binom[n - 1][k];
    }

    for (int k = 2; k <= maxdeg; ++k) {
        // Layers m..k-1 feed the powers; fill them in increasing order.
        for (int m = 2; m <= p; ++m)
            for (int kk = m; kk <= k; ++kk) power_layer(m, kk);
        Homog num(static_cast<std::size_t>(k) + 1, Int(0));
        // [F_{<k}(pX + X^p, pY + Y^p)]_k
        for (int d = 1; d < k; ++d) {
            if (F[d].empty() || (k - d) % (p - 1) != 0) continue;
            const int m = (k - d) / (p - 1);
            for (int a = 0; a <= d; ++a) {
                const Int& c = F[d][a];
                if (c == 0) continue;
                const int b = d - a;
                for (int s = 0; s <= std::min(a, m); ++s) {
                    const int t = m - s;
                    if (t > b) continue;
                    Int term = c * binom[a][s] * pow_p(p, a - s) * binom[b][t] * pow_p(p, b - t);
                    num[a + s * (p - 1)] += term;
                }
            }
        }
        // minus [F^p]_k
        const Homog& fp = pw[p][k];
        for (std::size_t a = 0; a < fp.size(); ++a) num[a] -= fp[a];
        for (auto& x : num) x = mod(x, MW);
        if (homog_zero(num)) continue;
        // layer = num / (p - p^k) = (num / p) / (1 - p^{k-1})
        const Int den = mod(Int(1) - pow_p(p, k - 1), MW);
        const Int deninv = inv_mod(den, MW);
        Homog layer(static_cast<std::size_t>(k) + 1);
        for (int a = 0; a <= k; ++a) {
            if (num[a] % P != 0)
                throw PrecisionExhausted("layer " + std::to_string(k) + " is not p-integral at working precision");
            layer[a] = mod((num[a] / P) * deninv, MW);
        }
        F[k] = homog_zero(layer) ? Homog{} : layer;
    }

    GroupLaw law;
    law.p = p;
    law.maxdeg = maxdeg;
    law.prec = prec;
    law.F.p = p;
    law.F.maxdeg = maxdeg;
    const Int Mp = pow_p(p, prec);
    for (int k = 1; k <= maxdeg; ++k) {
        if (F[k].empty()) continue;
        for (int a = 0; a <= k; ++a) {
            Int c = mod(F[k][a], Mp);
            if (c == 0) continue;
            long v = vp(c, p);
            law.F.coeffs.emplace(std::make_pair(a, k - a),
                                 PadicScalar::from_parts(p, v, c / pow_p(p, v), prec - v));
        }
    }
    return law;
}

int group_degree_for_cap(long cap) {
    // omitted monomials of degree D+1 with both exponents >= 1 weigh >= D + 1
    return static_cast<int>(std::max<long>(1, cap - 1));
}

Series bivar_eval(const BivarSeries& F, int prec, const Series& a, const Series& b, long cap) {
    const int p = a.p(), lam = a.lambda();
    int maxa = 0, maxb = 0;
    for (const auto& [ab, c] : F.coeffs) {
        maxa = std::max(maxa, ab.first);
        maxb = std::max(maxb, ab.second);
    }
    std::vector<Series> pa{Series::monomial(p, prec, lam, 0, Laurent::constant(p, prec, 1))};
    std::vector<Series> pb = pa;
    for (int i = 1; i <= maxa; ++i) pa.push_back(mul(pa.back(), a, cap));
    for (int j = 1; j <= maxb; ++j) pb.push_back(mul(pb.back(), b, cap));
    Series out(p, prec, lam);
    std::map<int, Series> inner;  // index a -> sum_b F_ab b^j
    for (const auto& [ab, c] : F.coeffs) {
        const Laurent::Coeff r = F.residue(ab.first, ab.second, prec);
        if (r == 0) continue;
        auto it = inner.find(ab.first);
        if (it == inner.end()) it = inner.emplace(ab.first, Series(p, prec, lam)).first;
        it->second += pb[ab.second].scaled(r);
    }
    for (auto& [i, s] : inner) out += mul(pa[i], s, cap);
    out.prune(cap);
    return out;
}

Series fg_add(const GroupLaw& law, const Series& a, const Series& b, long cap) {
    if (a.p() != law.p) throw InvalidArgument("series and group law over different primes");
    const int N = a.prec();
    if (law.prec < N)
        throw PrecisionExhausted("group law precision " + std::to_string(law.prec) +
                                 " below series precision " + std::to_string(N));
    if (a.is_zero() && a.is_exact()) return b;
    if (b.is_zero() && b.is_exact()) return a;
    const long mua = std::min(a.min_weight(), a.tail());
    const long mub = std::min(b.min_weight(), b.tail());
    if (mua <= 0 || mub <= 0)
        throw DivergentComposition("group-law substitution needs arguments of positive weight (got " +
                                   std::to_string(mua) + ", " + std::to_string(mub) + ")");
    const long D = law.maxdeg;
    const long omitted = std::min(D * mua + mub, mua + D * mub);
    Series out = bivar_eval(law.F, N, a, b, std::min(cap, omitted));
    out.prune(omitted);
    out.prune(cap);
    return out;
}

Series fg_mul_p(const Series& a, long cap) {
    Series r = a.times_p_power(1) + power(a, a.p(), cap);
    r.prune(cap);
    return r;
}

namespace {

long xseries_cap(const XSeries& a, const XSeries& b, int lam) {
    if (a.exact() && b.exact()) return kInfVal;
    const int ihi = std::min(a.exact() ? b.i_hi() : a.i_hi(), b.exact() ? a.i_hi() : b.i_hi());
    return cap_for_exponent(a.exponent(ihi), lam, std::min(a.prec(), b.prec()));
}

}  // namespace

XSeries fg_add(const GroupLaw& law, const XSeries& a, const XSeries& b) {
    const int N = std::min(a.prec(), b.prec());
    const int lam = std::max(choose_lambda(a), choose_lambda(b));
    const long cap = xseries_cap(a, b, lam);
    Series r = fg_add(law, a.with_prec(N).to_series(lam), b.with_prec(N).to_series(lam), cap);
    return XSeries::from_series(r, a.kind() == XKind::nonneg && b.kind() == XKind::nonneg
                                       ? XKind::nonneg
                                       : XKind::two_sided);
}

XSeries fg_mul_p(const XSeries& a) {
    const int lam = choose_lambda(a);
    const long cap = a.exact() ? kInfVal : cap_for_exponent(a.exponent(a.i_hi()), lam, a.prec());
    return XSeries::from_series(fg_mul_p(a.to_series(lam), cap), a.kind());
}

BivarSeries derivative_x(const BivarSeries& F) {
    BivarSeries d;
    d.p = F.p;
    d.maxdeg = F.maxdeg - 1;
    for (const auto& [ab, c] : F.coeffs) {
        if (ab.first == 0) continue;
        PadicScalar k = PadicScalar::from_int(F.p, ab.first, c.is_zero() ? 1 : c.prec());
        PadicScalar v = c * k;
        if (!v.is_zero()) d.coeffs.emplace(std::make_pair(ab.first - 1, ab.second), v.with_absprec(c.absprec()));
    }
    return d;
}

BivarSeries derivative_y(const BivarSeries& F) {
    BivarSeries d;
    d.p = F.p;
    d.maxdeg = F.maxdeg - 1;
    for (const auto& [ab, c] : F.coeffs) {
        if (ab.second == 0) continue;
        PadicScalar k = PadicScalar::from_int(F.p, ab.second, c.is_zero() ? 1 : c.prec());
        PadicScalar v = c * k;
        if (!v.is_zero()) d.coeffs.emplace(std::make_pair(ab.first, ab.second - 1), v.with_absprec(c.absprec()));
    }
    return d;
}

}  // namespace ramfield
