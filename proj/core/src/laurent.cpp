#include <ramfield/errors.hpp>
#include <ramfield/laurent.hpp>

#include <algorithm>

namespace ramfield {

int laurent_max_prec(int p) {
    i128 m = 1;
    int n = 0;
    const i128 limit = static_cast<i128>(1) << 62;
    while (m * p < limit) {
        m *= p;
        ++n;
    }
    return n;
}

Laurent::Laurent(int p, int prec) : p_(p), prec_(prec) {
    if (prec < 1) throw InvalidArgument("Laurent precision must be >= 1");
    if (prec > laurent_max_prec(p))
        throw InvalidArgument("Laurent precision " + std::to_string(prec) +
                              " exceeds the 62-bit residue limit for p = " + std::to_string(p));
    mod_ = 1;
    for (int i = 0; i < prec; ++i) mod_ *= p;
}

void Laurent::push_reduced(int e, Coeff c) {
    if (c != 0) terms_.emplace_back(e, c);
}

Laurent Laurent::constant(int p, int prec, Coeff c) { return monomial(p, prec, 0, c); }

Laurent Laurent::monomial(int p, int prec, int texp, Coeff c) {
    Laurent r(p, prec);
    c %= r.mod_;
    if (c < 0) c += r.mod_;
    r.push_reduced(texp, c);
    return r;
}

Laurent Laurent::from_scalars(int p, int prec, const std::map<int, PadicScalar>& coeffs) {
    Laurent r(p, prec);
    const Int M = r.mod_;
    for (const auto& [e, c] : coeffs) {
        if (c.p() != p) throw InvalidArgument("coefficient over a different prime");
        if (c.is_zero()) continue;
        if (c.val() < 0) throw InvalidArgument("Laurent coefficients must be p-adic integers");
        if (c.absprec() < prec)
            throw PrecisionExhausted("coefficient known only mod p^" + std::to_string(c.absprec()));
        r.push_reduced(e, static_cast<Coeff>(mod(c.lift(), M)));
    }
    return r;
}

Laurent Laurent::from_residues(int p, int prec, const std::map<int, Int>& coeffs) {
    Laurent r(p, prec);
    const Int M = r.mod_;
    for (const auto& [e, c] : coeffs) r.push_reduced(e, static_cast<Coeff>(mod(c, M)));
    return r;
}

long Laurent::valuation() const {
    long v = kInfVal;
    for (const auto& [e, c] : terms_) v = std::min(v, vp(c, p_));
    return v;
}

Laurent::Coeff Laurent::residue_at(int texp) const {
    auto it = std::lower_bound(terms_.begin(), terms_.end(), texp,
                               [](const Term& t, int e) { return t.first < e; });
    if (it != terms_.end() && it->first == texp) return it->second;
    return 0;
}

PadicScalar Laurent::coeff(int texp) const {
    const Coeff c = residue_at(texp);
    if (c == 0) return PadicScalar::zero(p_, prec_);
    const long v = vp(c, p_);
    return PadicScalar::from_parts(p_, v, Int(c) / pow_p(p_, v), prec_ - v);
}

Laurent Laurent::operator-() const {
    Laurent r(*this);
    for (auto& [e, c] : r.terms_) c = mod_ - c;
    return r;
}

Laurent& Laurent::operator+=(const Laurent& o) {
    if (p_ == 0) return *this = o;
    if (o.p_ == 0) return *this;
    if (o.p_ != p_ || o.prec_ != prec_) {
        if (o.p_ != p_) throw InvalidArgument("Laurent operands over different primes");
        if (o.prec_ < prec_) *this = with_prec(o.prec_);
        else return *this += o.with_prec(prec_);
    }
    std::vector<Term> out;
    out.reserve(terms_.size() + o.terms_.size());
    auto a = terms_.cbegin(), b = o.terms_.cbegin();
    const auto ae = terms_.cend(), be = o.terms_.cend();
    while (a != ae || b != be) {
        if (b == be || (a != ae && a->first < b->first)) {
            out.push_back(*a++);
        } else if (a == ae || b->first < a->first) {
            out.push_back(*b++);
        } else {
            Coeff s = a->second + b->second;
            if (s >= mod_) s -= mod_;
            if (s != 0) out.emplace_back(a->first, s);
            ++a;
            ++b;
        }
    }
    terms_ = std::move(out);
    return *this;
}

Laurent& Laurent::operator-=(const Laurent& o) { return *this += -o; }

Laurent operator*(const Laurent& a, const Laurent& b) {
    if (a.p_ == 0 || b.p_ == 0) throw InvalidArgument("uninitialised Laurent operand");
    if (a.p_ != b.p_) throw InvalidArgument("Laurent operands over different primes");
    if (a.prec_ != b.prec_) {
        int n = std::min(a.prec_, b.prec_);
        return a.with_prec(n) * b.with_prec(n);
    }
    Laurent r(a.p_, a.prec_);
    if (a.is_zero() || b.is_zero()) return r;
    const Laurent::Coeff M = a.mod_;
    const long lo = static_cast<long>(a.min_texp()) + b.min_texp();
    const long hi = static_cast<long>(a.max_texp()) + b.max_texp();
    const long span = hi - lo + 1;
    if (span <= 8192) {
        std::vector<Laurent::Coeff> acc(static_cast<std::size_t>(span), 0);
        for (const auto& [ea, ca] : a.terms_)
            for (const auto& [eb, cb] : b.terms_) {
                auto& slot = acc[static_cast<std::size_t>(ea + eb - lo)];
                slot += Laurent::mulmod(ca, cb, M);
                if (slot >= M) slot -= M;
            }
        for (long k = 0; k < span; ++k) r.push_reduced(static_cast<int>(lo + k), acc[k]);
    } else {
        std::map<int, Laurent::Coeff> acc;
        for (const auto& [ea, ca] : a.terms_)
            for (const auto& [eb, cb] : b.terms_) {
                auto& slot = acc[ea + eb];
                slot += Laurent::mulmod(ca, cb, M);
                if (slot >= M) slot -= M;
            }
        for (const auto& [e, c] : acc) r.push_reduced(e, c);
    }
    return r;
}

Laurent Laurent::scaled(Coeff c) const {
    c %= mod_;
    if (c < 0) c += mod_;
    Laurent r(p_, prec_);
    for (const auto& [e, x] : terms_) r.push_reduced(e, mulmod(x, c, mod_));
    return r;
}

Laurent Laurent::times_p_power(int k) const {
    if (k < 0) throw InvalidArgument("negative p-power");
    if (k >= prec_) return Laurent(p_, prec_);
    Coeff f = 1;
    for (int i = 0; i < k; ++i) f *= p_;
    return scaled(f);
}

Laurent Laurent::div_p_power(int k) const {
    if (k < 0) throw InvalidArgument("negative p-power");
    if (k == 0) return *this;
    if (k >= prec_) throw PrecisionExhausted("division by p^k leaves no digits");
    Coeff f = 1;
    for (int i = 0; i < k; ++i) f *= p_;
    Laurent r(p_, prec_ - k);
    for (const auto& [e, c] : terms_) {
        if (c % f != 0) throw InvalidArgument("Laurent polynomial not divisible by p^" + std::to_string(k));
        r.push_reduced(e, (c / f) % r.mod_);
    }
    return r;
}

Laurent Laurent::scale_T(int m) const {
    if (m < 1) throw InvalidArgument("scale_T needs a positive factor");
    Laurent r(*this);
    for (auto& [e, c] : r.terms_) e *= m;
    return r;
}

Laurent Laurent::shift_T(int k) const {
    Laurent r(*this);
    for (auto& [e, c] : r.terms_) e += k;
    return r;
}

Laurent Laurent::with_prec(int prec) const {
    if (prec >= prec_) return *this;
    Laurent r(p_, prec);
    for (const auto& [e, c] : terms_) r.push_reduced(e, c % r.mod_);
    return r;
}

Laurent Laurent::lifted_prec(int prec) const {
    if (prec <= prec_) return with_prec(prec);
    Laurent r(p_, prec);
    r.terms_ = terms_;
    return r;
}

bool Laurent::is_unit() const {
    int units = 0;
    for (const auto& [e, c] : terms_)
        if (c % p_ != 0) ++units;
    return units == 1;
}

Laurent Laurent::inverse() const {
    if (!is_unit())
        throw NonInvertibleLeadingTerm("Laurent polynomial is not a unit (reduction mod p is not a monomial)");
    int k = 0;
    Coeff u = 0;
    for (const auto& [e, c] : terms_)
        if (c % p_ != 0) {
            k = e;
            u = c;
        }
    const Coeff uinv = static_cast<Coeff>(inv_mod(Int(u), Int(mod_)));
    const Laurent norm = shift_T(-k).scaled(uinv);  // 1 + q, q = 0 mod p
    const Laurent q = norm - constant(p_, prec_, 1);
    const Laurent one = constant(p_, prec_, 1);
    Laurent y = one;
    for (int i = 0; i < prec_; ++i) y = one - q * y;
    return y.shift_T(-k).scaled(uinv);
}

PadicScalar Laurent::eval(const PadicScalar& x) const {
    if (x.p() != p_) throw InvalidArgument("evaluation point over a different prime");
    if (x.is_zero() || x.val() != 0)
        throw NonUnitSubstitution("T may only be replaced by a unit (val(x) = " +
                                  (x.is_zero() ? std::string("inf") : std::to_string(x.val())) + ")");
    const long A = std::min<long>(prec_, x.absprec());
    const Int M = pow_p(p_, A);
    const Int xr = mod(x.unit(), M);
    const Int xi = inv_mod(xr, M);
    Int acc = 0;
    for (const auto& [e, c] : terms_) {
        Int base = e >= 0 ? xr : xi;
        Int pw = boost::multiprecision::powm(base, Int(e >= 0 ? e : -e), M);
        acc = (acc + Int(c) * pw) % M;
    }
    if (acc == 0) return PadicScalar::zero(p_, A);
    long v = vp(acc, p_);
    return PadicScalar::from_parts(p_, v, acc / pow_p(p_, v), A - v);
}

std::string to_string(const Laurent& a) {
    if (a.is_zero()) return "0";
    std::string out;
    for (const auto& [e, c] : a.terms()) {
        if (!out.empty()) out += " + ";
        out += std::to_string(c);
        if (e != 0) out += "*T^" + std::to_string(e);
    }
    return out;
}

}  // namespace ramfield
