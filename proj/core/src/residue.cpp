#include <ramfield/bigint.hpp>
#include <ramfield/errors.hpp>
#include <ramfield/residue.hpp>

#include <stdexcept>

namespace ramfield {

namespace {

using Elem = FiniteField::Elem;
using FpPoly = std::vector<std::int64_t>;

std::int64_t md(std::int64_t x, std::int64_t p) { return ((x % p) + p) % p; }

std::int64_t inv_fp(std::int64_t a, std::int64_t p) {
    std::int64_t r = 1, b = md(a, p), e = p - 2;
    while (e > 0) {
        if (e & 1) r = r * b % p;
        b = b * b % p;
        e >>= 1;
    }
    return r;
}

// f mod g over F_p, g monic
FpPoly fp_mod(FpPoly f, const FpPoly& g, std::int64_t p) {
    const std::size_t dg = g.size() - 1;
    for (std::size_t k = f.size(); k-- > dg;) {
        const std::int64_t c = f[k];
        if (c == 0) continue;
        for (std::size_t j = 0; j <= dg; ++j) f[k - dg + j] = md(f[k - dg + j] - c * g[j], p);
    }
    f.resize(std::min(f.size(), dg));
    return f;
}

FpPoly monic_from_index(std::int64_t k, int deg, std::int64_t p) {
    FpPoly f(static_cast<std::size_t>(deg + 1), 0);
    for (int j = 0; j < deg; ++j, k /= p) f[static_cast<std::size_t>(j)] = k % p;
    f[static_cast<std::size_t>(deg)] = 1;
    return f;
}

bool irreducible(const FpPoly& f, std::int64_t p) {
    const int m = static_cast<int>(f.size()) - 1;
    for (int d = 1; 2 * d <= m; ++d) {
        std::int64_t count = 1;
        for (int j = 0; j < d; ++j) count *= p;
        for (std::int64_t k = 0; k < count; ++k) {
            const FpPoly r = fp_mod(f, monic_from_index(k, d, p), p);
            bool zero = true;
            for (auto c : r) zero = zero && c == 0;
            if (zero) return false;
        }
    }
    return true;
}

}  // namespace

FiniteField::FiniteField(int p, int m) : p_(p), m_(m) {
    if (!is_prime(p)) throw InvalidArgument("residue characteristic must be prime");
    if (m < 1) throw InvalidArgument("extension degree must be >= 1");
    q_ = 1;
    for (int j = 0; j < m; ++j) {
        if (q_ > (std::int64_t{1} << 30) / p) throw InvalidArgument("finite field too large");
        q_ *= p;
    }
    if (m == 1) {
        modulus_ = {0, 1};
        return;
    }
    for (std::int64_t k = 0; k < q_; ++k) {
        FpPoly f = monic_from_index(k, m, p);
        if (irreducible(f, p)) {
            modulus_ = std::move(f);
            return;
        }
    }
    throw std::logic_error("no irreducible polynomial found");
}

Elem FiniteField::from_int(std::int64_t c) const {
    Elem x = zero();
    x[0] = md(c, p_);
    return x;
}

Elem FiniteField::gen() const {
    if (m_ == 1) return from_int(-modulus_[0]);
    Elem x = zero();
    x[1] = 1;
    return x;
}

Elem FiniteField::basis(int k) const {
    if (k < 0 || k >= m_) throw InvalidArgument("basis index outside [0, m)");
    Elem x = zero();
    x[static_cast<std::size_t>(k)] = 1;
    return x;
}

bool FiniteField::is_zero(const Elem& x) const {
    for (auto c : x)
        if (c) return false;
    return true;
}

Elem FiniteField::add(const Elem& x, const Elem& y) const {
    Elem r(x.size());
    for (std::size_t k = 0; k < x.size(); ++k) r[k] = (x[k] + y[k]) % p_;
    return r;
}

Elem FiniteField::sub(const Elem& x, const Elem& y) const {
    Elem r(x.size());
    for (std::size_t k = 0; k < x.size(); ++k) r[k] = md(x[k] - y[k], p_);
    return r;
}

Elem FiniteField::neg(const Elem& x) const { return sub(zero(), x); }

Elem FiniteField::mul(const Elem& x, const Elem& y) const {
    FpPoly r(static_cast<std::size_t>(2 * m_ - 1), 0);
    for (std::size_t a = 0; a < x.size(); ++a) {
        if (!x[a]) continue;
        for (std::size_t b = 0; b < y.size(); ++b) r[a + b] = (r[a + b] + x[a] * y[b]) % p_;
    }
    r = fp_mod(std::move(r), modulus_, p_);
    r.resize(static_cast<std::size_t>(m_), 0);
    return r;
}

Elem FiniteField::pow(Elem x, std::int64_t e) const {
    if (e < 0) return pow(inv(x), -e);
    Elem r = one();
    while (e > 0) {
        if (e & 1) r = mul(r, x);
        x = mul(x, x);
        e >>= 1;
    }
    return r;
}

Elem FiniteField::inv(const Elem& x) const {
    if (is_zero(x)) throw DivisionByZero("inverse of 0 in a finite field");
    if (m_ == 1) return from_int(inv_fp(x[0], p_));
    return pow(x, q_ - 2);
}

Elem FiniteField::pth_root(const Elem& x) const { return pow(x, q_ / p_); }

std::int64_t FiniteField::index(const Elem& x) const {
    std::int64_t k = 0;
    for (std::size_t j = x.size(); j-- > 0;) k = k * p_ + x[j];
    return k;
}

Elem FiniteField::element(std::int64_t k) const {
    Elem x = zero();
    for (int j = 0; j < m_; ++j, k /= p_) x[static_cast<std::size_t>(j)] = k % p_;
    return x;
}

std::string FiniteField::to_string(const Elem& x) const {
    std::string s;
    int terms = 0;
    for (std::size_t k = 0; k < x.size(); ++k) {
        if (!x[k]) continue;
        if (terms++) s += "+";
        if (k == 0) s += std::to_string(x[k]);
        else {
            if (x[k] != 1) s += std::to_string(x[k]) + "*";
            s += k == 1 ? "a" : "a^" + std::to_string(k);
        }
    }
    if (terms == 0) return "0";
    return terms > 1 ? "(" + s + ")" : s;
}

// ---- polynomials over F_q ----------------------------------------------

namespace {

struct PolyOps {
    const FiniteField& F;

    void trim(FqPoly& a) const {
        while (!a.empty() && F.is_zero(a.back())) a.pop_back();
    }
    FqPoly add(const FqPoly& a, const FqPoly& b) const {
        FqPoly r(std::max(a.size(), b.size()), F.zero());
        for (std::size_t k = 0; k < a.size(); ++k) r[k] = a[k];
        for (std::size_t k = 0; k < b.size(); ++k) r[k] = F.add(r[k], b[k]);
        trim(r);
        return r;
    }
    FqPoly neg(FqPoly a) const {
        for (auto& c : a) c = F.neg(c);
        return a;
    }
    FqPoly mul(const FqPoly& a, const FqPoly& b) const {
        if (a.empty() || b.empty()) return {};
        FqPoly r(a.size() + b.size() - 1, F.zero());
        for (std::size_t i = 0; i < a.size(); ++i)
            for (std::size_t j = 0; j < b.size(); ++j) r[i + j] = F.add(r[i + j], F.mul(a[i], b[j]));
        trim(r);
        return r;
    }
    FqPoly scale(FqPoly a, const Elem& c) const {
        for (auto& x : a) x = F.mul(x, c);
        trim(a);
        return a;
    }
    // a = q b + r
    std::pair<FqPoly, FqPoly> divmod(FqPoly a, const FqPoly& b) const {
        if (b.empty()) throw DivisionByZero("polynomial division by 0");
        FqPoly q;
        if (a.size() >= b.size()) q.assign(a.size() - b.size() + 1, F.zero());
        const Elem lc_inv = F.inv(b.back());
        while (!a.empty() && a.size() >= b.size()) {
            const std::size_t s = a.size() - b.size();
            const Elem c = F.mul(a.back(), lc_inv);
            q[s] = c;
            for (std::size_t j = 0; j < b.size(); ++j) a[s + j] = F.sub(a[s + j], F.mul(c, b[j]));
            trim(a);
        }
        trim(q);
        return {q, a};
    }
    FqPoly monic(const FqPoly& a) const { return a.empty() ? a : scale(a, F.inv(a.back())); }
    FqPoly gcd(FqPoly a, FqPoly b) const {
        while (!b.empty()) {
            FqPoly r = divmod(a, b).second;
            a = std::move(b);
            b = std::move(r);
        }
        return monic(a);
    }
    bool is_one(const FqPoly& a) const {
        return a.size() == 1 && F.index(a[0]) == 1;
    }
};

}  // namespace

const char* to_string(ResidueKind k) {
    switch (k) {
        case ResidueKind::prime_field: return "prime";
        case ResidueKind::finite_field: return "finite";
        case ResidueKind::rational_function_field: return "rational-function";
    }
    return "prime";
}

ResidueField ResidueField::prime(int p) { return ResidueField(ResidueKind::prime_field, p, 1); }
ResidueField ResidueField::finite(int p, int m) { return ResidueField(ResidueKind::finite_field, p, m); }
ResidueField ResidueField::rational_function(int p, int m) {
    return ResidueField(ResidueKind::rational_function_field, p, m);
}

ResidueElement ResidueField::reduce(FqPoly num, FqPoly den) const {
    const PolyOps P{F_};
    P.trim(num);
    P.trim(den);
    if (den.empty()) throw DivisionByZero("zero denominator");
    if (num.empty()) return zero();
    const FqPoly g = P.gcd(num, den);
    if (!P.is_one(g)) {
        num = P.divmod(num, g).first;
        den = P.divmod(den, g).first;
    }
    const Elem lc = F_.inv(den.back());
    return {P.scale(num, lc), P.scale(den, lc)};
}

ResidueElement ResidueField::zero() const { return {{}, {F_.one()}}; }
ResidueElement ResidueField::one() const { return constant(F_.one()); }

ResidueElement ResidueField::constant(const Elem& c) const {
    if (static_cast<int>(c.size()) != F_.m()) throw InvalidArgument("constant of the wrong degree");
    if (F_.is_zero(c)) return zero();
    return {{c}, {F_.one()}};
}

ResidueElement ResidueField::from_int(std::int64_t c) const { return constant(F_.from_int(c)); }

ResidueElement ResidueField::monomial(const Elem& c, long e) const {
    if (e != 0 && is_perfect()) throw UnsupportedVariant("t is only available in rational function fields");
    if (F_.is_zero(c)) return zero();
    const std::size_t k = static_cast<std::size_t>(e < 0 ? -e : e);
    FqPoly t(k + 1, F_.zero());
    t[k] = F_.one();
    if (e >= 0) {
        t[k] = c;
        return {t, {F_.one()}};
    }
    // c / t^k; t^k is monic and coprime to c
    return {{c}, t};
}

ResidueElement ResidueField::fraction(FqPoly num, FqPoly den) const {
    const PolyOps P{F_};
    P.trim(num);
    P.trim(den);
    if (is_perfect() && (num.size() > 1 || den.size() > 1))
        throw UnsupportedVariant("t is only available in rational function fields");
    return reduce(std::move(num), std::move(den));
}

bool ResidueField::equal(const ResidueElement& x, const ResidueElement& y) const {
    return x.num == y.num && x.den == y.den;
}

ResidueElement ResidueField::add(const ResidueElement& x, const ResidueElement& y) const {
    const PolyOps P{F_};
    if (x.den == y.den) return reduce(P.add(x.num, y.num), x.den);
    return reduce(P.add(P.mul(x.num, y.den), P.mul(y.num, x.den)), P.mul(x.den, y.den));
}

ResidueElement ResidueField::neg(const ResidueElement& x) const { return {PolyOps{F_}.neg(x.num), x.den}; }

ResidueElement ResidueField::sub(const ResidueElement& x, const ResidueElement& y) const { return add(x, neg(y)); }

ResidueElement ResidueField::mul(const ResidueElement& x, const ResidueElement& y) const {
    const PolyOps P{F_};
    return reduce(P.mul(x.num, y.num), P.mul(x.den, y.den));
}

ResidueElement ResidueField::scale(const ResidueElement& x, std::int64_t c) const {
    const PolyOps P{F_};
    return reduce(P.scale(x.num, F_.from_int(c)), x.den);
}

ResidueElement ResidueField::inv(const ResidueElement& x) const {
    if (is_zero(x)) throw DivisionByZero("inverse of 0 in the residue field");
    return reduce(x.den, x.num);
}

ResidueElement ResidueField::pow(const ResidueElement& x, long e) const {
    if (e < 0) return pow(inv(x), -e);
    ResidueElement r = one(), b = x;
    while (e > 0) {
        if (e & 1) r = mul(r, b);
        b = mul(b, b);
        e >>= 1;
    }
    return r;
}

namespace {

// (sum c_e t^e)^{p^k} = sum c_e^{p^k} t^{e p^k}
FqPoly frob_poly(const FiniteField& F, const FqPoly& a, int k) {
    if (a.empty()) return a;
    std::int64_t s = 1;
    for (int j = 0; j < k; ++j) s *= F.p();
    FqPoly r((a.size() - 1) * static_cast<std::size_t>(s) + 1, F.zero());
    for (std::size_t e = 0; e < a.size(); ++e) {
        Elem c = a[e];
        for (int j = 0; j < k; ++j) c = F.frobenius(c);
        r[e * static_cast<std::size_t>(s)] = c;
    }
    return r;
}

}  // namespace

ResidueElement ResidueField::frobenius_power(const ResidueElement& x, int k) const {
    if (k < 0) throw InvalidArgument("negative Frobenius power");
    return {frob_poly(F_, x.num, k), frob_poly(F_, x.den, k)};
}

std::string ResidueField::to_string(const ResidueElement& x) const {
    auto poly = [&](const FqPoly& a) {
        std::string s;
        int terms = 0;
        for (std::size_t e = a.size(); e-- > 0;) {
            if (F_.is_zero(a[e])) continue;
            if (terms++) s += " + ";
            const std::string c = F_.to_string(a[e]);
            if (e == 0) s += c;
            else {
                if (c != "1") s += c + "*";
                s += e == 1 ? "t" : "t^" + std::to_string(e);
            }
        }
        return std::pair{terms ? s : std::string("0"), terms};
    };
    const auto [n, nt] = poly(x.num);
    if (PolyOps{F_}.is_one(x.den)) return n;
    const auto [d, dt] = poly(x.den);
    return (nt > 1 ? "(" + n + ")" : n) + "/" + (dt > 1 ? "(" + d + ")" : d);
}

// ---- p-power test and catalogs -------------------------------------------

std::optional<ResidueElement> is_pm_power(const ResidueField& k, const ResidueElement& b, int m) {
    if (k.is_zero(b)) throw InvalidArgument("is_pm_power needs b != 0");
    if (m < 0) throw InvalidArgument("negative exponent level");
    const FiniteField& F = k.constants();
    std::int64_t s = 1;
    for (int j = 0; j < m; ++j) s *= k.p();
    // reduced form: b = r^{p^m} iff num and den both lie in F_q[t^{p^m}]
    auto root = [&](const FqPoly& a) -> std::optional<FqPoly> {
        FqPoly r((a.size() - 1) / static_cast<std::size_t>(s) + 1, F.zero());
        for (std::size_t e = 0; e < a.size(); ++e) {
            if (F.is_zero(a[e])) continue;
            if (e % static_cast<std::size_t>(s)) return std::nullopt;
            Elem c = a[e];
            for (int j = 0; j < m; ++j) c = F.pth_root(c);
            r[e / static_cast<std::size_t>(s)] = c;
        }
        return r;
    };
    const auto n = root(b.num);
    if (!n) return std::nullopt;
    const auto d = root(b.den);
    if (!d) return std::nullopt;
    return ResidueElement{*n, *d};
}

bool embeddable(const ResidueField& k, const ResidueElement& b, int n) {
    if (n < 1) throw InvalidArgument("n must be >= 1");
    return is_pm_power(k, b, n - 1).has_value();
}

bool independent_mod_powers(const ResidueField& k, const std::vector<ResidueElement>& elems, int i,
                            std::int64_t budget) {
    const int p = k.p();
    std::vector<int> lam(elems.size(), 0);
    for (std::int64_t tried = 0; tried < budget; ++tried) {
        // next nonzero coefficient vector in F_p^len
        std::size_t pos = 0;
        while (pos < lam.size() && ++lam[pos] == p) lam[pos++] = 0;
        if (pos == lam.size()) return true;
        ResidueElement comb = k.zero();
        for (std::size_t j = 0; j < elems.size(); ++j)
            if (lam[j]) comb = k.add(comb, k.scale(elems[j], lam[j]));
        if (k.is_zero(comb) || is_pm_power(k, comb, i)) return false;
    }
    return true;
}

std::vector<ResidueElement> quotient_basis(const ResidueField& k, int i, int bound, bool top) {
    if (i < 1) throw InvalidArgument("basis level must be >= 1");
    const FiniteField& F = k.constants();
    std::vector<ResidueElement> out;
    if (k.is_perfect()) {
        // k^{p^j} = k: the quotient is trivial and the top basis is that of F_q
        if (top)
            for (int c = 0; c < F.m(); ++c) out.push_back(k.constant(F.basis(c)));
        return out;
    }
    long s = 1;
    for (int j = 1; j < i; ++j) s *= k.p();
    for (long E = s; E <= bound; E += s) {
        const long e = E / s;
        if (!top && e % k.p() == 0) continue;
        for (int c = 0; c < F.m(); ++c) out.push_back(k.monomial(F.basis(c), E));
    }
    if (top) {
        for (const auto& x : out)
            if (!is_pm_power(k, x, i - 1)) throw std::logic_error("top basis element is not a p^{i-1}-th power");
    } else if (!independent_mod_powers(k, out, i)) {
        throw std::logic_error("quotient basis representatives are dependent");
    }
    return out;
}

BasisCatalog generator_catalog(const ResidueField& k, int n, int bound) {
    if (n < 1) throw InvalidArgument("n must be >= 1");
    BasisCatalog cat;
    cat.n = n;
    cat.bound = bound;
    const std::string p = std::to_string(k.p());
    for (int i = 1; i <= n; ++i)
        for (auto& d : quotient_basis(k, i, bound, i == n)) {
            CatalogEntry e;
            e.i = i;
            e.d_text = k.to_string(d);
            e.equation = "x^" + p + " - x = -" + p + "^{-1} * " + e.d_text;
            e.feeds_tower = i == n;
            e.d = std::move(d);
            cat.entries.push_back(std::move(e));
        }
    return cat;
}

}  // namespace ramfield
