#include <ramfield/errors.hpp>
#include <ramfield/galois.hpp>

#include <algorithm>

namespace ramfield {

namespace {

TowerElement subst_rec(const Tower& src, const TowerElement& x, int j, long offset, const Tower& dst,
                       const std::vector<TowerElement>& images, int out_level) {
    if (j == 0) {
        const Int& v = x.num[static_cast<std::size_t>(offset)];
        if (v == 0) return dst.zero(out_level);
        TowerElement s = dst.from_rational(v, x.D, out_level);
        if (!x.is_exact()) {
            const long cap = ceil_div(x.prec + src.monomial_weight(offset), src.e());
            s = dst.with_prec(s, cap * dst.e());
        }
        return s;
    }
    const long B = src.dim(j - 1);
    // Horner in b_j over level-(j-1) blocks
    TowerElement acc = dst.zero(out_level);
    for (int i = src.p() - 1; i >= 0; --i) {
        acc = dst.mul(acc, images[static_cast<std::size_t>(j - 1)]);
        acc = dst.add(acc, subst_rec(src, x, j - 1, offset + i * B, dst, images, out_level));
    }
    return acc;
}

int out_level_of(const std::vector<TowerElement>& images, int j) {
    int l = 0;
    for (int k = 0; k < j; ++k) l = std::max(l, images[static_cast<std::size_t>(k)].level);
    return l;
}

TowerPoly as_poly(const Tower& T, const TowerElement& c) {
    TowerPoly f(static_cast<std::size_t>(T.p() + 1), T.zero(0));
    f[0] = T.neg(c);
    f[1] = T.from_int(-1, 0);
    f[static_cast<std::size_t>(T.p())] = T.one(0);
    return f;
}

bool same_images(const Tower& T, const std::vector<TowerElement>& a, const std::vector<TowerElement>& b,
                 long* worst) {
    long w = kInfVal;
    for (std::size_t k = 0; k < a.size(); ++k) {
        const TowerValuation v = T.valuation(T.sub(a[k], b[k]));
        if (v.exact && v.value <= 0) return false;
        w = std::min(w, v.value);
    }
    if (worst) *worst = std::min(*worst, w);
    return true;
}

}  // namespace

TowerElement substitute(const Tower& src, const TowerElement& x, const Tower& dst,
                        const std::vector<TowerElement>& images) {
    if (static_cast<int>(images.size()) < x.level) throw InvalidArgument("missing generator images");
    return subst_rec(src, x, x.level, 0, dst, images, out_level_of(images, x.level));
}

AutomorphismTable automorphism_table(const Tower& T) {
    const int n = T.levels();
    AutomorphismTable tab;
    tab.p = T.p();
    tab.n = n;
    std::vector<std::vector<TowerElement>> partial{{}};
    for (int k = 1; k <= n; ++k) {
        std::vector<std::vector<TowerElement>> next;
        for (const auto& imgs : partial) {
            const TowerElement ck = k == 1 ? T.c(1) : substitute(T, T.c(k), T, imgs);
            for (const auto& r : find_roots(T, as_poly(T, ck), k)) {
                auto ext = imgs;
                ext.push_back(r.value);
                next.push_back(std::move(ext));
            }
        }
        partial = std::move(next);
    }
    long total = 1;
    for (int k = 0; k < n; ++k) total *= T.p();
    if (static_cast<long>(partial.size()) != total)
        throw NotGalois("found " + std::to_string(partial.size()) + " automorphisms, expected " +
                        std::to_string(total));
    // identity first, then canonical order
    std::vector<TowerElement> id;
    for (int k = 1; k <= n; ++k) id.push_back(T.beta(k));
    auto id_it = std::find_if(partial.begin(), partial.end(),
                              [&](const auto& s) { return same_images(T, s, id, nullptr); });
    if (id_it == partial.end()) throw NotGalois("identity not among the enumerated automorphisms");
    std::iter_swap(partial.begin(), id_it);
    tab.images = std::move(partial);

    const std::size_t N = tab.images.size();
    tab.compose.assign(N, std::vector<int>(N, -1));
    for (std::size_t s = 0; s < N; ++s)
        for (std::size_t t = 0; t < N; ++t) {
            std::vector<TowerElement> st;
            for (int k = 0; k < n; ++k) st.push_back(substitute(T, tab.images[t][k], T, tab.images[s]));
            for (std::size_t r = 0; r < N; ++r)
                if (same_images(T, st, tab.images[r], &tab.match_valuation)) {
                    tab.compose[s][t] = static_cast<int>(r);
                    break;
                }
            if (tab.compose[s][t] < 0) throw NotGalois("composition leaves the enumerated set");
        }
    tab.order.assign(N, 0);
    for (std::size_t s = 0; s < N; ++s) {
        std::size_t cur = s;
        long ord = 1;
        while (cur != 0) {
            cur = static_cast<std::size_t>(tab.compose[s][cur]);
            ++ord;
            if (ord > static_cast<long>(N)) throw NotGalois("automorphism of undefined order");
        }
        tab.order[s] = ord;
        if (ord == static_cast<long>(N) && tab.generator < 0) tab.generator = static_cast<int>(s);
        tab.generator_order = std::max(tab.generator_order, ord);
    }
    tab.cyclic = tab.generator >= 0;
    return tab;
}

TowerEquality towers_equal(const Tower& t1, const Tower& t2, int n) {
    if (t1.p() != t2.p()) throw InvalidArgument("towers over different primes");
    if (n < 1 || n > t1.levels() || n > t2.levels()) throw InvalidArgument("n exceeds a tower height");
    TowerEquality out;
    out.equal = true;
    for (int j = 1; j <= n; ++j) {
        const TowerElement cj = substitute(t2, t2.c(j), t1, out.images);
        const auto roots = find_roots(t1, as_poly(t1, cj), j);
        EqualityWitness w;
        w.level = j;
        w.threshold = n - j;
        if (roots.empty()) {
            out.equal = false;
            w.found = false;
            out.witness.push_back(w);
            return out;
        }
        // closest root to b_j
        long best = -kInfVal;
        bool inf = false;
        std::size_t arg = 0;
        for (std::size_t r = 0; r < roots.size(); ++r) {
            const TowerValuation v = t1.valuation(t1.sub(roots[r].value, t1.beta(j)));
            // zero at precision, or an exact zero difference
            const bool vinf = !v.exact || v.value >= kInfVal;
            if (v.value > best || (vinf && !inf)) {
                best = v.value;
                inf = vinf;
                arg = r;
            }
        }
        w.infinite = inf;
        w.valuation = boost::rational<long>(best, t1.e());
        if (!inf && !(w.valuation > w.threshold)) out.equal = false;
        out.witness.push_back(w);
        out.images.push_back(roots[arg].value);
    }
    return out;
}

const char* to_string(AsClass c) {
    switch (c) {
        case AsClass::equal: return "equal";
        case AsClass::equal_over_unramified: return "equal_over_unramified";
        case AsClass::unclassified: return "unclassified";
    }
    return "unclassified";
}

AsClass as_equiv_class(const PadicScalar& a1, const PadicScalar& a2) {
    if (a1.is_zero() || a2.is_zero() || a1.val() != -1 || a2.val() != -1)
        throw InvalidArgument("as_equiv_class needs v(a1) = v(a2) = -1");
    const PadicScalar d = a1 - a2;
    const long v = d.is_zero() ? d.absprec() : d.val();
    if (v >= 1) return AsClass::equal;
    if (v >= 0) return AsClass::equal_over_unramified;
    return AsClass::unclassified;
}

}  // namespace ramfield
