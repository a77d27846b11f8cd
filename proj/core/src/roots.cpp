#include <ramfield/errors.hpp>
#include <ramfield/roots.hpp>

#include <algorithm>
#include <map>
#include <optional>

namespace ramfield {

TowerElement poly_eval(const Tower& T, const TowerPoly& f, const TowerElement& x) {
    if (f.empty()) return T.zero(x.level);
    TowerElement r = f.back();
    for (std::size_t k = f.size() - 1; k-- > 0;) r = T.add(T.mul(r, x), f[k]);
    return r;
}

TowerPoly poly_derivative(const Tower& T, const TowerPoly& f) {
    TowerPoly d;
    for (std::size_t k = 1; k < f.size(); ++k) d.push_back(T.mul_int(f[k], Int(static_cast<long>(k))));
    if (d.empty()) d.push_back(T.zero(f.empty() ? 0 : f[0].level));
    return d;
}

TowerPoly taylor_shift(const Tower& T, const TowerPoly& f, const TowerElement& x0) {
    // repeated synthetic division by (X - x0)
    TowerPoly a = f, out;
    const std::size_t n = a.size();
    for (std::size_t m = 0; m < n; ++m) {
        for (std::size_t k = n - 1; k > m; --k) a[k - 1] = T.add(a[k - 1], T.mul(a[k], x0));
        out.push_back(a[m]);
    }
    return out;
}

bool canonical_less(const TowerElement& a, const TowerElement& b) {
    // normalised representatives are unique, so (level, D, num) is a total order
    if (a.level != b.level) return a.level < b.level;
    if (a.D != b.D) return a.D < b.D;
    return a.num < b.num;
}

namespace {

struct Ctx {
    const Tower& T;
    int level;
    long unit;  // value-group step of the level
    std::map<long, long> monomial_by_residue;  // (-w_a) mod e -> a
};

// Element p^q b^a of valuation r.
TowerElement monomial_of_valuation(const Ctx& c, long r) {
    const long e = c.T.e();
    const long key = ((r % e) + e) % e;
    const auto it = c.monomial_by_residue.find(key);
    if (it == c.monomial_by_residue.end()) throw InvalidArgument("valuation not in the value group");
    const long a = it->second;
    const long q = (r + c.T.monomial_weight(a)) / e;
    return c.T.monomial(a, Int(1), -q, c.level);
}

// Residue of x / N for v(x) = v(N), N a monomial.
long residue_ratio(const Tower& T, const TowerElement& x, const TowerElement& N) {
    const long a = T.dominant_index(N);
    const long p = T.p();
    const Int& xn = x.num.at(static_cast<std::size_t>(a));
    const Int& nn = N.num.at(static_cast<std::size_t>(a));
    // (xn p^{-Dx}) / (nn p^{-DN}) is a unit
    const long sx = vp(xn, static_cast<int>(p)), sn = vp(nn, static_cast<int>(p));
    const Int ux = mod(xn / pow_p(static_cast<int>(p), sx), Int(p));
    const Int un = mod(nn / pow_p(static_cast<int>(p), sn), Int(p));
    return static_cast<long>(mod(ux * inv_mod(un, Int(p)), Int(p)));
}

struct Point {
    long k;
    long v;
};

// Lower convex hull of the points, left to right.
std::vector<Point> lower_hull(const std::vector<Point>& pts) {
    std::vector<Point> h;
    for (const auto& q : pts) {
        while (h.size() >= 2) {
            const Point& a = h[h.size() - 2];
            const Point& b = h.back();
            // drop b if it lies on or above segment a-q
            const long lhs = static_cast<long>(b.v - a.v) * (q.k - a.k);
            const long rhs = static_cast<long>(q.v - a.v) * (b.k - a.k);
            if (lhs >= rhs) h.pop_back();
            else break;
        }
        h.push_back(q);
    }
    return h;
}

// Roots over F_p (with multiplicity) of sum rho[k] z^k, z != 0.
std::vector<std::pair<long, int>> fp_roots(std::vector<long> rho, long p) {
    std::vector<std::pair<long, int>> out;
    for (long z = 1; z < p; ++z) {
        int mult = 0;
        for (;;) {
            // synthetic division by (z' - z)
            if (rho.size() < 2) break;
            std::vector<long> q(rho.size() - 1);
            long acc = 0;
            for (std::size_t k = rho.size(); k-- > 0;) {
                acc = (acc * z + rho[k]) % p;
                if (k > 0) q[k - 1] = acc;
            }
            if (acc != 0) break;
            ++mult;
            rho = q;
        }
        if (mult) out.emplace_back(z, mult);
    }
    return out;
}

TowerElement newton_refine(const Ctx& c, const TowerPoly& f, TowerElement y) {
    const Tower& T = c.T;
    const TowerPoly df = poly_derivative(T, f);
    for (int it = 0; it < 200; ++it) {
        const TowerElement fy = poly_eval(T, f, y);
        if (fy.is_zero()) return y;
        const TowerElement dy = T.mul(fy, T.inv(poly_eval(T, df, y)));
        if (dy.is_zero()) return y;
        y = T.sub(y, dy);
    }
    throw InsufficientPrecision("Newton refinement did not settle");
}

void solve(const Ctx& c, const TowerPoly& f, std::optional<long> lower, const TowerElement& offset, int depth,
           std::vector<TowerElement>& out) {
    const Tower& T = c.T;
    if (depth > 64) throw InsufficientPrecision("root isolation exceeded the recursion limit");
    std::vector<Point> pts;
    std::vector<Point> unknown;  // zero at precision: (k, precision)
    for (std::size_t k = 0; k < f.size(); ++k) {
        const TowerValuation v = T.valuation(f[k]);
        if (v.exact) pts.push_back({static_cast<long>(k), v.value});
        else if (v.value < kInfVal) unknown.push_back({static_cast<long>(k), v.value});
    }
    if (pts.empty()) throw InsufficientPrecision("polynomial vanishes at working precision");
    // zero root: constant term vanishes at precision
    if (pts.front().k > 0) {
        if (pts.front().k > 1)
            throw InsufficientPrecision("multiple root near " + T.to_string(offset) +
                                        " cannot be separated at working precision; raise --prec");
        out.push_back(offset);
    }
    const std::vector<Point> hull = lower_hull(pts);
    for (const auto& u : unknown) {
        if (u.k < pts.front().k) continue;
        // an unknown coefficient below the hull could change the polygon
        for (std::size_t s = 0; s + 1 < hull.size(); ++s) {
            const Point& a = hull[s];
            const Point& b = hull[s + 1];
            if (u.k <= a.k || u.k >= b.k) continue;
            const long lhs = static_cast<long>(u.v - a.v) * (b.k - a.k);
            const long rhs = static_cast<long>(b.v - a.v) * (u.k - a.k);
            if (lhs <= rhs)
                throw InsufficientPrecision("coefficient of degree " + std::to_string(u.k) +
                                            " is below precision on the Newton polygon; raise --prec");
        }
    }
    for (std::size_t s = 0; s + 1 < hull.size(); ++s) {
        const Point& a = hull[s];
        const Point& b = hull[s + 1];
        const long dk = b.k - a.k, dv = a.v - b.v;
        if (dv % dk != 0) continue;  // root valuation outside the value group of Q_p-units
        const long r = dv / dk;
        if (r % c.unit != 0) continue;  // not in this field's value group
        if (lower && r <= *lower) continue;
        const TowerElement M = monomial_of_valuation(c, r);
        const TowerElement N = monomial_of_valuation(c, a.v + a.k * r);
        std::vector<long> rho(static_cast<std::size_t>(dk + 1), 0);
        TowerElement Mk = T.pow(M, a.k);
        for (long k = a.k; k <= b.k; ++k, Mk = T.mul(Mk, M)) {
            const TowerValuation v = T.valuation(f[static_cast<std::size_t>(k)]);
            if (!v.exact || v.value + k * r != a.v + a.k * r) continue;
            rho[static_cast<std::size_t>(k - a.k)] = residue_ratio(T, T.mul(f[static_cast<std::size_t>(k)], Mk), N);
        }
        for (const auto& [z, mult] : fp_roots(rho, T.p())) {
            const TowerElement y0 = T.mul_int(M, Int(z));
            if (mult == 1) {
                const TowerElement y = newton_refine(c, f, y0);
                out.push_back(T.add(offset, y));
            } else {
                solve(c, taylor_shift(T, f, y0), r, T.add(offset, y0), depth + 1, out);
            }
        }
    }
}

}  // namespace

std::vector<CertifiedRoot> find_roots(const Tower& T, const TowerPoly& f0, int level) {
    if (level < 0 || level > T.levels()) throw InvalidArgument("level outside the tower");
    TowerPoly f;
    for (const auto& x : f0) f.push_back(T.lift(x, std::max(level, x.level)));
    for (auto& x : f)
        if (x.level > level) throw InvalidArgument("coefficient above the search level");
    for (auto& x : f) x = T.lift(x, level);
    while (!f.empty() && f.back().is_exact() && f.back().is_zero()) f.pop_back();
    if (f.size() < 2) throw InvalidArgument("polynomial of degree < 1");
    Ctx c{T, level, T.e() / T.dim(level), {}};
    for (long a = 0; a < T.dim(level); ++a) {
        const long w = T.monomial_weight(a);
        c.monomial_by_residue[((-w % T.e()) + T.e()) % T.e()] = a;
    }
    std::vector<TowerElement> raw;
    solve(c, f, std::nullopt, T.zero(level), 0, raw);

    const TowerPoly df = poly_derivative(T, f);
    std::vector<CertifiedRoot> out;
    for (auto& r : raw) {
        CertifiedRoot cr;
        cr.value = r;
        const TowerValuation v = T.valuation(poly_eval(T, f, r));
        cr.residual = v.value;
        cr.residual_is_bound = !v.exact;
        const TowerValuation dv = T.valuation(poly_eval(T, df, r));
        cr.derivative = dv.exact ? dv.value : kInfVal;
        cr.hensel = dv.exact && cr.residual > 2 * cr.derivative;
        out.push_back(std::move(cr));
    }
    // distinct roots must be separated beyond their certification radius
    for (std::size_t i = 0; i < out.size(); ++i)
        for (std::size_t j = i + 1; j < out.size(); ++j) {
            const TowerValuation d = T.valuation(T.sub(out[i].value, out[j].value));
            const long radius = std::min(out[i].residual - out[i].derivative, out[j].residual - out[j].derivative);
            if (!d.exact || (out[i].hensel && out[j].hensel && d.value >= radius))
                throw InsufficientPrecision("two candidate roots agree to v = " + std::to_string(d.value) + "/" +
                                            std::to_string(T.e()) + "; raise --prec");
        }
    std::sort(out.begin(), out.end(),
              [](const CertifiedRoot& a, const CertifiedRoot& b) { return canonical_less(a.value, b.value); });
    return out;
}

}  // namespace ramfield
