#include <ramfield/errors.hpp>
#include <ramfield/series.hpp>

#include <algorithm>
#include <limits>
#include <sstream>
#include <stdexcept>
#include <vector>

namespace ramfield {

namespace {

long sat_add(long a, long b) {
    if (a >= kInfVal || b >= kInfVal) return kInfVal;
    return a + b;
}

struct WTerm {
    int e;
    long w;
    const Laurent* c;
};

std::vector<WTerm> weighted(const Series& s) {
    std::vector<WTerm> out;
    out.reserve(s.terms().size());
    for (const auto& [e, c] : s.terms()) out.push_back({e, s.weight(e, c), &c});
    return out;
}

void check_compatible(const Series& a, const Series& b) {
    if (a.p() != b.p() || a.prec() != b.prec() || a.lambda() != b.lambda())
        throw InvalidArgument("series operands differ in p, precision or weight parameter");
}

}  // namespace

Series::Series(int p, int prec, int lambda, long tail)
    : p_(p), prec_(prec), lambda_(lambda), tail_(tail) {
    if (lambda < 1) throw InvalidArgument("weight parameter must be positive");
    if (prec < 1 || prec > laurent_max_prec(p)) throw InvalidArgument("series precision out of range");
}

Series Series::monomial(int p, int prec, int lambda, int e, const Laurent& c) {
    Series s(p, prec, lambda);
    s.add_term(e, c);
    return s;
}

Series Series::x(int p, int prec, int lambda) {
    return monomial(p, prec, lambda, 1, Laurent::constant(p, prec, 1));
}

Laurent Series::coeff(int e) const {
    auto it = terms_.find(e);
    return it == terms_.end() ? Laurent(p_, prec_) : it->second;
}

long Series::known_hi() const {
    if (is_exact()) return kInfVal;
    return tail_ - static_cast<long>(lambda_) * (prec_ - 1) - 1;
}

long Series::weight(int e, const Laurent& c) const {
    const long v = c.valuation();
    if (v >= kInfVal) return kInfVal;
    return e + static_cast<long>(lambda_) * v;
}

long Series::min_weight() const {
    long w = kInfVal;
    for (const auto& [e, c] : terms_) w = std::min(w, weight(e, c));
    return w;
}

int Series::min_exp() const {
    if (terms_.empty()) throw InvalidArgument("min_exp of empty series");
    return terms_.begin()->first;
}

int Series::max_exp() const {
    if (terms_.empty()) throw InvalidArgument("max_exp of empty series");
    return terms_.rbegin()->first;
}

void Series::add_term(int e, const Laurent& c) {
    if (c.is_zero()) return;
    Laurent cc = c.p() == p_ && c.prec() == prec_ ? c : c.with_prec(prec_);
    if (cc.prec() != prec_) throw InvalidArgument("coefficient precision below series precision");
    auto it = terms_.find(e);
    if (it == terms_.end()) {
        terms_.emplace(e, std::move(cc));
    } else {
        it->second += cc;
        if (it->second.is_zero()) terms_.erase(it);
    }
}

Series& Series::lower_tail(long t) { return prune(t); }

Series& Series::prune(long cap) {
    tail_ = std::min(tail_, cap);
    if (tail_ >= kInfVal) return *this;
    for (auto it = terms_.begin(); it != terms_.end();) {
        if (weight(it->first, it->second) >= tail_) it = terms_.erase(it);
        else ++it;
    }
    return *this;
}

Series Series::truncated_exp(long emax) const {
    Series r(p_, prec_, lambda_, tail_);
    for (const auto& [e, c] : terms_)
        if (e <= emax) r.terms_.emplace(e, c);
    if (emax < kInfVal && !terms_.empty() && terms_.rbegin()->first > emax) r.prune(emax + 1);
    return r;
}

Series Series::with_lambda(int lambda) const {
    if (!is_exact()) throw InvalidArgument("cannot change the weight parameter of a truncated series");
    Series r(p_, prec_, lambda);
    r.terms_ = terms_;
    return r;
}

Series Series::with_prec(int prec) const {
    if (prec >= prec_) return *this;
    Series r(p_, prec, lambda_, tail_);
    for (const auto& [e, c] : terms_) r.add_term(e, c.with_prec(prec));
    if (!is_exact()) r.prune(tail_);
    return r;
}

Series Series::operator-() const {
    Series r(*this);
    for (auto& [e, c] : r.terms_) c = -c;
    return r;
}

Series& Series::operator+=(const Series& o) {
    check_compatible(*this, o);
    for (const auto& [e, c] : o.terms_) add_term(e, c);
    prune(o.tail_);
    return *this;
}

Series& Series::operator-=(const Series& o) { return *this += -o; }

Series Series::scaled(const Laurent& c) const {
    Series r(p_, prec_, lambda_, kInfVal);
    for (const auto& [e, x] : terms_) r.add_term(e, x * c);
    const long v = c.valuation();
    r.prune(v >= kInfVal ? kInfVal : sat_add(tail_, static_cast<long>(lambda_) * v));
    return r;
}

Series Series::scaled(Laurent::Coeff c) const {
    return scaled(Laurent::constant(p_, prec_, c));
}

Series Series::times_p_power(int k) const {
    Series r(p_, prec_, lambda_, sat_add(tail_, static_cast<long>(lambda_) * k));
    for (const auto& [e, c] : terms_) r.add_term(e, c.times_p_power(k));
    return r;
}

Series Series::scale_T(int m) const {
    Series r(p_, prec_, lambda_, tail_);
    for (const auto& [e, c] : terms_) r.terms_.emplace(e, c.scale_T(m));
    return r;
}

Series Series::shift_X(int k) const {
    Series r(p_, prec_, lambda_, sat_add(tail_, k));
    for (const auto& [e, c] : terms_) r.terms_.emplace(e + k, c);
    return r;
}

std::string Series::debug_string() const {
    std::ostringstream os;
    for (const auto& [e, c] : terms_) {
        os << "X^" << e << ": {";
        for (const auto& [t, x] : c.terms()) os << " T^" << t << ":" << x;
        os << " }\n";
    }
    os << "tail " << (is_exact() ? std::string("inf") : std::to_string(tail_)) << "\n";
    return os.str();
}

Series mul(const Series& a, const Series& b, long cap) {
    check_compatible(a, b);
    const auto wa = weighted(a), wb = weighted(b);
    long mua = kInfVal, mub = kInfVal;
    for (const auto& t : wa) mua = std::min(mua, t.w);
    for (const auto& t : wb) mub = std::min(mub, t.w);
    long tail = std::min({sat_add(a.tail(), mub), sat_add(b.tail(), mua), sat_add(a.tail(), b.tail())});
    // An empty operand with an infinite tail is exact zero.
    if (wa.empty() && a.is_exact()) tail = kInfVal;
    if (wb.empty() && b.is_exact()) tail = kInfVal;
    const long c = std::min(cap, tail);
    Series r(a.p(), a.prec(), a.lambda(), c);
    std::map<int, Laurent> acc;
    for (const auto& x : wa) {
        for (const auto& y : wb) {
            if (c < kInfVal && x.w + y.w >= c) continue;
            Laurent prod = (*x.c) * (*y.c);
            if (prod.is_zero()) continue;
            auto it = acc.find(x.e + y.e);
            if (it == acc.end()) acc.emplace(x.e + y.e, std::move(prod));
            else it->second += prod;
        }
    }
    for (auto& [e, v] : acc) r.add_term(e, v);
    r.prune(c);
    return r;
}

namespace {

Series one_like(const Series& s) {
    return Series::monomial(s.p(), s.prec(), s.lambda(), 0, Laurent::constant(s.p(), s.prec(), 1));
}

Laurent laurent_pow(const Laurent& u, long m) {
    Laurent base = m < 0 ? u.inverse() : u;
    unsigned long e = static_cast<unsigned long>(m < 0 ? -m : m);
    Laurent r = Laurent::constant(u.p(), u.prec(), 1);
    while (e) {
        if (e & 1) r = r * base;
        e >>= 1;
        if (e) base = base * base;
    }
    return r;
}

}  // namespace

Series power(const Series& s, long m, long cap) {
    if (m == 0) return one_like(s);
    if (m > 0) {
        Series r = one_like(s), b = s;
        unsigned long e = static_cast<unsigned long>(m);
        while (e) {
            if (e & 1) r = mul(r, b, cap);
            e >>= 1;
            if (e) b = mul(b, b, cap);
        }
        return r;
    }
    if (cap >= kInfVal) throw InvalidArgument("negative series power needs a finite weight cap");
    const Laurent u = s.coeff(1);
    if (!u.is_unit())
        throw NonInvertibleLeadingTerm("negative power needs a unit coefficient at X^1");
    const Laurent uinv = u.inverse();
    Series h = s.shift_X(-1).scaled(uinv) - one_like(s);
    long muh = std::min(h.min_weight(), h.tail());
    if (muh <= 0)
        throw DivergentComposition("binomial expansion of a negative power does not converge "
                                   "(non-leading part has weight " + std::to_string(muh) + ")");
    // u^m X^m has weight m; the binomial sum is needed below weight cap - m.
    const long capb = cap - m;
    const long K = ceil_div(capb, muh);
    const Int M = pow_p(s.p(), s.prec());
    Series sum = one_like(s), hk = one_like(s);
    Int binom = 1;
    for (long k = 1; k < K; ++k) {
        hk = mul(hk, h, capb);
        if (hk.is_zero() && hk.is_exact()) break;
        binom = binom * (m - k + 1) / k;
        const auto bc = static_cast<Laurent::Coeff>(mod(binom, M));
        if (bc != 0) sum += hk.scaled(bc);
        else sum.prune(hk.tail());
        if (hk.is_zero() && hk.tail() >= capb) break;
    }
    // omitted k >= K: weight >= K * muh >= capb
    sum.prune(capb);
    return sum.scaled(laurent_pow(u, m)).shift_X(static_cast<int>(m));
}

Series compose(const Series& outer, const Series& inner, long cap) {
    check_compatible(outer, inner);
    const int p = outer.p(), N = outer.prec(), lam = outer.lambda();
    Series result(p, N, lam, kInfVal);
    if (outer.is_zero()) {
        result.prune(outer.tail());
        return result;
    }
    const long mu_inner = std::min(inner.min_weight(), inner.tail());
    const bool unit_lead = inner.coeff(1).is_unit();
    if (!outer.is_exact()) {
        // Omitted outer terms o X^e contribute weight >= e + lambda v(o) when
        // inner^e has weight >= e.
        bool ok = mu_inner >= 1;
        if (!ok && unit_lead) {
            Series h = inner.shift_X(-1).scaled(inner.coeff(1).inverse()) - one_like(inner);
            ok = std::min(h.min_weight(), h.tail()) >= 0;
        }
        if (!ok) throw DivergentComposition("cannot bound the truncated tail of the outer series");
        result.prune(outer.tail());
    }
    const int emin = outer.min_exp(), emax = outer.max_exp();
    if (emin < 0) {
        if (cap >= kInfVal) throw InvalidArgument("negative exponents need a finite weight cap");
        const long kmax = -emin;
        // inverse carries weight >= -1 per factor; widen caps so that
        // inner^{-k} stays exact below cap.
        Series inv = power(inner, -1, cap + kmax);
        Series cur = inv;
        for (long k = 1; k <= kmax; ++k) {
            if (k > 1) cur = mul(cur, inv, cap + (kmax - k) + 1);
            auto it = outer.terms().find(static_cast<int>(-k));
            if (it != outer.terms().end()) {
                Series term = cur.scaled(it->second);
                term.prune(cap);
                result += term;
            }
        }
    }
    if (outer.terms().count(0)) result += one_like(inner).scaled(outer.coeff(0));
    if (emax > 0) {
        Series cur = one_like(inner);
        int cur_e = 0;
        std::map<int, Series> step_cache;
        for (const auto& [e, o] : outer.terms()) {
            if (e <= 0) continue;
            const int gap = e - cur_e;
            auto it = step_cache.find(gap);
            if (it == step_cache.end()) it = step_cache.emplace(gap, power(inner, gap, cap)).first;
            cur = mul(cur, it->second, cap);
            cur_e = e;
            Series term = cur.scaled(o);
            result += term;
        }
    }
    result.prune(cap);
    return result;
}

Series reversion(const Series& R, long emax) {
    const Laurent u = R.coeff(1);
    if (!u.is_unit())
        throw NonInvertibleLeadingTerm("reversion needs a unit coefficient at X^1");
    if (R.is_zero() || R.min_exp() < 1)
        throw InvalidArgument("reversion needs a series of X-order 1");
    const int p = R.p(), N = R.prec(), lam = R.lambda();
    const Laurent uinv = u.inverse();
    const long cap = cap_for_exponent(emax, lam, N);
    Series S = Series::monomial(p, N, lam, 1, uinv);
    const Series X = Series::x(p, N, lam);
    for (int guard = 0; guard < 100000; ++guard) {
        Series D = compose(R, S, cap) - X;
        if (!D.is_exact() && D.known_hi() < emax)
            throw WindowTooSmall("reversion lost its window (known through X^" +
                                 std::to_string(D.known_hi()) + ")");
        auto it = D.terms().begin();
        if (it == D.terms().end() || it->first > emax) {
            return S.truncated_exp(emax);
        }
        if (it->first < 1) throw DivergentComposition("reversion residual below X^1");
        S -= Series::monomial(p, N, lam, it->first, it->second * uinv);
    }
    throw WindowTooSmall("reversion did not converge");
}

// ---------------------------------------------------------------------------

XSeries::XSeries(int p, int prec, XKind kind) : p_(p), prec_(prec), kind_(kind) {
    require_prime(p);
    if (prec < 1 || prec > laurent_max_prec(p)) throw InvalidArgument("series precision out of range");
}

Laurent XSeries::coeff(int i) const {
    auto it = entries_.find(i);
    return it == entries_.end() ? Laurent(p_, prec_) : it->second;
}

void XSeries::set(int i, const Laurent& c) {
    if (kind_ == XKind::nonneg && i < 0)
        throw InvalidArgument("negative index in a one-sided series");
    if (c.p() != p_) throw InvalidArgument("coefficient over a different prime");
    Laurent cc = c.prec() >= prec_ ? c.with_prec(prec_) : c;
    if (cc.prec() != prec_) throw PrecisionExhausted("coefficient precision below series precision");
    if (cc.is_zero()) entries_.erase(i);
    else entries_[i] = std::move(cc);
}

int XSeries::i_lo() const {
    if (entries_.empty()) return 0;
    int lo = entries_.begin()->first;
    return kind_ == XKind::nonneg ? std::max(lo, 0) : lo;
}

int XSeries::i_hi() const {
    if (i_hi_) return *i_hi_;
    return entries_.empty() ? 0 : entries_.rbegin()->first;
}

void XSeries::set_truncation(std::optional<int> i_hi) {
    i_hi_ = i_hi;
    if (i_hi_)
        for (auto it = entries_.begin(); it != entries_.end();)
            it = it->first > *i_hi_ ? entries_.erase(it) : std::next(it);
}

Series XSeries::to_series(int lambda) const {
    long tail = kInfVal;
    if (i_hi_) tail = exponent(*i_hi_ + 1);
    Series s(p_, prec_, lambda, tail);
    for (const auto& [i, c] : entries_) s.add_term(exponent(i), c);
    return s;
}

XSeries XSeries::from_series(const Series& s, XKind kind) {
    const int p = s.p();
    XSeries x(p, s.prec(), kind);
    std::optional<int> hi;
    if (!s.is_exact()) hi = static_cast<int>(floor_div(s.known_hi() - 1, p - 1));
    for (const auto& [e, c] : s.terms()) {
        if (floor_div(e - 1, p - 1) * (p - 1) != e - 1)
            throw std::logic_error("exponent closure violated: X^" + std::to_string(e) +
                                   " is not of the form i(p-1)+1");
        const int i = static_cast<int>(floor_div(e - 1, p - 1));
        if (hi && i > *hi) continue;
        if (kind == XKind::nonneg && i < 0)
            throw std::logic_error("one-sided series acquired a negative index");
        x.entries_.emplace(i, c);
    }
    x.i_hi_ = hi;
    return x;
}

XSeries XSeries::with_prec(int prec) const {
    if (prec >= prec_) return *this;
    XSeries r(p_, prec, kind_);
    for (const auto& [i, c] : entries_) r.set(i, c.with_prec(prec));
    r.i_hi_ = i_hi_;
    return r;
}

XSeries XSeries::at_prec(int prec) const {
    if (prec <= prec_) return with_prec(prec);
    XSeries r(p_, prec, kind_);
    for (const auto& [i, c] : entries_) r.entries_.emplace(i, c.lifted_prec(prec));
    r.i_hi_ = i_hi_;
    return r;
}

int choose_lambda(const XSeries& s) {
    int lam = s.p() - 1;
    for (const auto& [i, c] : s.entries()) {
        const int e = s.exponent(i);
        if (e >= 1) continue;
        const long v = c.valuation();
        if (v == 0)
            throw DivergentComposition("index " + std::to_string(i) +
                                       " has a unit coefficient at a non-positive exponent");
        lam = std::max<long>(lam, ceil_div(1 - e, v));
    }
    return lam;
}

XSeries xseries_compose(const XSeries& outer, const XSeries& inner, int lambda) {
    if (outer.p() != inner.p()) throw InvalidArgument("series over different primes");
    if (outer.kind() != XKind::nonneg && outer.i_lo() < 0 && !inner.coeff(0).is_unit())
        throw NonInvertibleLeadingTerm("negative powers need a unit coefficient at X^1 in the inner series");
    const int N = std::min(outer.prec(), inner.prec());
    const int lam = lambda > 0 ? lambda : std::max(choose_lambda(outer), choose_lambda(inner));
    XSeries o = outer.with_prec(N), in = inner.with_prec(N);
    if (outer.i_lo() >= 0 && inner.kind() == XKind::nonneg && !(outer.exact() && inner.exact())) {
        // both of X-order >= 1: a tail of either operand starting at index k
        // changes the composite only from index k on
        int ihi = std::numeric_limits<int>::max();
        if (outer.truncation()) ihi = std::min(ihi, *outer.truncation());
        if (inner.truncation()) ihi = std::min(ihi, *inner.truncation());
        o.set_truncation(std::nullopt);
        in.set_truncation(std::nullopt);
        const long cap = cap_for_exponent(o.exponent(ihi), lam, N);
        Series r = compose(o.to_series(lam), in.to_series(lam), cap);
        r.lower_tail(cap);
        XSeries out = XSeries::from_series(r, outer.kind() == XKind::nonneg ? XKind::nonneg : XKind::two_sided);
        out.set_truncation(ihi);
        return out;
    }
    const int ihi = std::max(outer.i_hi(), inner.i_hi());
    const bool exact = outer.exact() && inner.exact() && outer.i_lo() >= 0;
    const long cap = exact ? kInfVal : cap_for_exponent(o.exponent(ihi), lam, N);
    Series r = compose(o.to_series(lam), in.to_series(lam), cap);
    XSeries out = XSeries::from_series(r, inner.kind() == XKind::nonneg && outer.kind() == XKind::nonneg
                                              ? XKind::nonneg
                                              : XKind::two_sided);
    if (!exact) {
        if (out.truncation() && *out.truncation() < ihi)
            throw WindowTooSmall("composition window shrank below index " + std::to_string(ihi));
        out.set_truncation(ihi);
    }
    return out;
}

XSeries xseries_reversion(const XSeries& R, int i_hi) {
    if (R.kind() != XKind::nonneg) throw InvalidArgument("reversion expects a one-sided series");
    if (!R.coeff(0).is_unit())
        throw NonInvertibleLeadingTerm("R_0 must be a unit of the coefficient ring");
    const int lam = choose_lambda(R);
    Series S = reversion(R.to_series(lam), R.exponent(i_hi));
    XSeries out = XSeries::from_series(S, XKind::nonneg);
    out.set_truncation(i_hi);
    return out;
}

}  // namespace ramfield
