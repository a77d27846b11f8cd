#include <ramfield/errors.hpp>
#include <ramfield/k2top.hpp>

namespace ramfield {

std::optional<Int> generator_order(int p, long j) {
    require_prime(p);
    if (j == 0) return std::nullopt;
    return pow_p(p, vp(Int(j), p) + 1);
}

namespace {

void check_same(const K2Element& x, const K2Element& y) {
    if (x.p != y.p) throw InvalidArgument("K2 elements over different primes");
}

PadicScalar n0_of(int p, const Int& c, long prec) {
    if (c == 0) return PadicScalar::zero(p);
    return PadicScalar::from_int(p, c, prec);
}

}  // namespace

K2Element k2_zero(int p, long prec) {
    require_prime(p);
    if (prec < 1) throw InvalidArgument("precision must be >= 1");
    return {p, prec, PadicScalar::zero(p), {}};
}

K2Element k2_generator(int p, long j, long prec) { return k2_normal_form(p, prec, {{j, Int(1)}}); }

K2Element k2_normal_form(int p, long prec, const std::vector<std::pair<long, Int>>& raw) {
    K2Element x = k2_zero(p, prec);
    Int c0 = 0;
    for (const auto& [j, c] : raw) {
        if (j == 0) c0 += c;
        else x.torsion[j] += c;
    }
    x.n0 = n0_of(p, c0, prec);
    for (auto it = x.torsion.begin(); it != x.torsion.end();) {
        it->second = mod(it->second, *generator_order(p, it->first));
        it = it->second == 0 ? x.torsion.erase(it) : std::next(it);
    }
    return x;
}

K2Element k2_add(const K2Element& x, const K2Element& y) {
    check_same(x, y);
    K2Element r = x;
    r.prec = std::min(x.prec, y.prec);
    r.n0 = x.n0 + y.n0;
    for (const auto& [j, c] : y.torsion) {
        const Int s = mod(r.torsion[j] + c, *generator_order(x.p, j));
        if (s == 0) r.torsion.erase(j);
        else r.torsion[j] = s;
    }
    return r;
}

K2Element k2_neg(const K2Element& x) {
    K2Element r = x;
    r.n0 = -x.n0;
    for (auto& [j, c] : r.torsion) c = *generator_order(x.p, j) - c;
    return r;
}

K2Element k2_scalar_mul(const Int& c, const K2Element& x) {
    K2Element r = x;
    r.n0 = n0_of(x.p, c, x.prec) * x.n0;
    for (auto it = r.torsion.begin(); it != r.torsion.end();) {
        it->second = mod(it->second * c, *generator_order(x.p, it->first));
        it = it->second == 0 ? r.torsion.erase(it) : std::next(it);
    }
    return r;
}

bool k2_is_zero(const K2Element& x) { return x.torsion.empty() && x.n0.is_zero(); }

bool k2_equal(const K2Element& x, const K2Element& y) {
    check_same(x, y);
    return x.torsion == y.torsion && (x.n0 - y.n0).is_zero();
}

}  // namespace ramfield
