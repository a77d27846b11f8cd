#include <ramfield/errors.hpp>
#include <ramfield/padic.hpp>

#include <algorithm>
#include <map>
#include <mutex>

namespace ramfield {

bool is_prime(long p) {
    if (p < 2) return false;
    for (long q = 2; q * q <= p; ++q)
        if (p % q == 0) return false;
    return true;
}

void require_prime(long p) {
    if (!is_prime(p) || p <= 3)
        throw InvalidArgument("p must be a prime > 3, got " + std::to_string(p));
}

Int ipow(const Int& base, unsigned long e) {
    Int r = 1, b = base;
    while (e) {
        if (e & 1) r *= b;
        e >>= 1;
        if (e) b *= b;
    }
    return r;
}

Int pow_p(int p, long e) {
    if (e < 0) throw InvalidArgument("negative exponent in pow_p");
    if (e > 256) return ipow(Int(p), static_cast<unsigned long>(e));
    static std::mutex mu;
    static std::map<std::pair<int, long>, Int> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto key = std::make_pair(p, e);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
    Int r = ipow(Int(p), static_cast<unsigned long>(e));
    cache.emplace(key, r);
    return r;
}

long vp(const Int& x, int p) {
    if (x == 0) return kInfVal;
    long v = 0;
    Int q = x, r;
    const Int P = p;
    for (;;) {
        boost::multiprecision::divide_qr(q, P, q, r);
        if (r != 0) return v;
        ++v;
    }
}

long vp(std::int64_t x, int p) {
    if (x == 0) return kInfVal;
    long v = 0;
    while (x % p == 0) {
        x /= p;
        ++v;
    }
    return v;
}

Int mod(const Int& x, const Int& m) {
    Int r = x % m;
    if (r < 0) r += m;
    return r;
}

Int inv_mod(const Int& a, const Int& m) {
    if (m == 1) return 0;
    Int old_r = mod(a, m), r = m, old_s = 1, s = 0;
    while (r != 0) {
        Int q = old_r / r;
        Int t = old_r - q * r;
        old_r = r;
        r = t;
        t = old_s - q * s;
        old_s = s;
        s = t;
    }
    if (old_r != 1) throw DivisionByZero("element is not invertible modulo " + to_string(m));
    return mod(old_s, m);
}

std::string to_string(const Int& x) { return x.str(); }

Int int_from_string(const std::string& s) {
    if (s.empty()) throw InvalidArgument("empty integer string");
    std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
    if (i == s.size()) throw InvalidArgument("malformed integer '" + s + "'");
    for (std::size_t k = i; k < s.size(); ++k)
        if (s[k] < '0' || s[k] > '9') throw InvalidArgument("malformed integer '" + s + "'");
    return Int(s);
}

namespace {

void check_same_p(const PadicScalar& a, const PadicScalar& b) {
    if (a.p() != b.p())
        throw InvalidArgument("p-adic operands over different primes");
}

}  // namespace

void PadicScalar::normalize_from(int p, const Int& x, long absprec) {
    // value = x, known modulo p^absprec (absprec may be negative).
    p_ = p;
    if (absprec >= kInfVal) throw InvalidArgument("nonzero p-adic values need finite precision");
    if (x == 0) {
        val_ = kInfVal;
        unit_ = 0;
        prec_ = 0;
        zero_cap_ = absprec;
        return;
    }
    long v = vp(x, p);
    if (v >= absprec) {
        val_ = kInfVal;
        unit_ = 0;
        prec_ = 0;
        zero_cap_ = absprec;
        return;
    }
    val_ = v;
    prec_ = absprec - v;
    unit_ = mod(x / pow_p(p, v), pow_p(p, prec_));
    zero_cap_ = kInfVal;
}

PadicScalar PadicScalar::zero(int p, long absprec) {
    PadicScalar z;
    z.p_ = p;
    z.zero_cap_ = absprec;
    return z;
}

PadicScalar PadicScalar::from_int(int p, const Int& x, long relprec) {
    if (relprec <= 0) throw InvalidArgument("relative precision must be positive");
    if (x == 0) return zero(p, relprec);
    long v = vp(x, p);
    PadicScalar r;
    r.normalize_from(p, x, v + relprec);
    return r;
}

PadicScalar PadicScalar::from_parts(int p, long val, const Int& unit, long relprec) {
    if (relprec <= 0) throw InvalidArgument("relative precision must be positive");
    Int u = mod(unit, pow_p(p, relprec));
    if (u % p == 0) throw InvalidArgument("unit part divisible by p");
    PadicScalar r;
    r.p_ = p;
    r.val_ = val;
    r.unit_ = u;
    r.prec_ = relprec;
    r.zero_cap_ = kInfVal;
    return r;
}

PadicScalar PadicScalar::from_rational(int p, const Int& num, const Int& den, long relprec) {
    if (den == 0) throw DivisionByZero("rational with zero denominator");
    if (num == 0) return zero(p, relprec);
    long vn = vp(num, p), vd = vp(den, p);
    Int un = num / pow_p(p, vn), ud = den / pow_p(p, vd);
    Int M = pow_p(p, relprec);
    return from_parts(p, vn - vd, mod(un * inv_mod(ud, M), M), relprec);
}

PadicScalar PadicScalar::operator-() const {
    if (is_zero()) return *this;
    PadicScalar r = *this;
    r.unit_ = mod(-unit_, pow_p(p_, prec_));
    return r;
}

PadicScalar operator+(const PadicScalar& a, const PadicScalar& b) {
    check_same_p(a, b);
    const int p = a.p();
    if (a.is_zero()) return b.with_absprec(a.absprec());
    if (b.is_zero()) return a.with_absprec(b.absprec());
    long A = std::min(a.absprec(), b.absprec());
    long v0 = std::min(a.val(), b.val());
    Int s = a.unit() * pow_p(p, a.val() - v0) + b.unit() * pow_p(p, b.val() - v0);
    s = mod(s, pow_p(p, A - v0));
    PadicScalar r;
    r.normalize_from(p, s, A - v0);
    if (!r.is_zero()) r.val_ += v0;
    r.zero_cap_ = r.is_zero() ? A : kInfVal;
    return r;
}

PadicScalar operator-(const PadicScalar& a, const PadicScalar& b) { return a + (-b); }

PadicScalar operator*(const PadicScalar& a, const PadicScalar& b) {
    check_same_p(a, b);
    const int p = a.p();
    if (a.is_zero() || b.is_zero()) {
        long cap;
        if (a.is_zero() && b.is_zero())
            cap = PadicScalar::sat_add(a.absprec(), b.absprec());
        else if (a.is_zero())
            cap = PadicScalar::sat_add(a.absprec(), b.val());
        else
            cap = PadicScalar::sat_add(b.absprec(), a.val());
        return PadicScalar::zero(p, cap);
    }
    long N = std::min(a.prec(), b.prec());
    PadicScalar r;
    r.p_ = p;
    r.val_ = a.val() + b.val();
    r.prec_ = N;
    r.unit_ = mod(a.unit() * b.unit(), pow_p(p, N));
    r.zero_cap_ = kInfVal;
    return r;
}

PadicScalar PadicScalar::inv() const {
    if (is_exact_zero()) throw DivisionByZero("inverse of zero");
    if (is_zero())
        throw PrecisionExhausted("inverse of an element with no significant digits (zero mod p^" +
                                 std::to_string(zero_cap_) + ")");
    PadicScalar r = *this;
    r.val_ = -val_;
    r.unit_ = inv_mod(unit_, pow_p(p_, prec_));
    return r;
}

PadicScalar operator/(const PadicScalar& a, const PadicScalar& b) { return a * b.inv(); }

PadicScalar PadicScalar::pow(long m) const {
    if (m == 0) {
        if (is_zero() && !is_exact_zero())
            throw PrecisionExhausted("0^0 with inexact zero");
        return from_int(p_, 1, is_zero() ? 1 : prec_);
    }
    if (m < 0) return inv().pow(-m);
    if (is_zero()) {
        long cap = zero_cap_ >= kInfVal ? kInfVal : zero_cap_ * m;
        return zero(p_, cap);
    }
    PadicScalar r = *this;
    Int M = pow_p(p_, prec_);
    Int u = 1, b = unit_;
    unsigned long e = static_cast<unsigned long>(m);
    while (e) {
        if (e & 1) u = (u * b) % M;
        e >>= 1;
        if (e) b = (b * b) % M;
    }
    r.unit_ = u;
    r.val_ = val_ * m;
    return r;
}

PadicScalar PadicScalar::with_absprec(long A) const {
    if (A >= absprec()) return *this;
    if (is_zero()) return zero(p_, A);
    if (A <= val_) return zero(p_, A);
    PadicScalar r = *this;
    r.prec_ = A - val_;
    r.unit_ = mod(unit_, pow_p(p_, r.prec_));
    return r;
}

PadicScalar PadicScalar::with_relprec(long N) const {
    if (is_zero() || N >= prec_) return *this;
    if (N <= 0) throw InvalidArgument("relative precision must be positive");
    return with_absprec(val_ + N);
}

std::pair<Int, long> PadicScalar::rational_rep() const {
    if (is_zero()) return {Int(0), 0};
    if (val_ >= 0) return {unit_ * pow_p(p_, val_), 0};
    return {unit_, -val_};
}

Int PadicScalar::lift() const {
    if (is_zero()) return 0;
    if (val_ < 0) throw InvalidArgument("lift of a non-integral p-adic value");
    return unit_ * pow_p(p_, val_);
}

long PadicScalar::residue() const {
    if (is_zero()) {
        if (zero_cap_ < 1) throw PrecisionExhausted("residue of zero with no digits");
        return 0;
    }
    if (val_ < 0) throw InvalidArgument("residue of a non-integral p-adic value");
    if (val_ > 0) return 0;
    return static_cast<long>(unit_ % p_);
}

bool PadicScalar::same(const PadicScalar& o) const {
    return p_ == o.p_ && val_ == o.val_ && unit_ == o.unit_ && prec() == o.prec() &&
           (is_zero() ? zero_cap_ == o.zero_cap_ : true);
}

std::string PadicScalar::to_string() const {
    if (is_zero()) {
        if (zero_cap_ >= kInfVal) return "0";
        return "O(" + std::to_string(p_) + "^" + std::to_string(zero_cap_) + ")";
    }
    std::string s = ramfield::to_string(unit_);
    if (val_ != 0) s += "*" + std::to_string(p_) + "^" + std::to_string(val_);
    return s + " + O(" + std::to_string(p_) + "^" + std::to_string(absprec()) + ")";
}

}  // namespace ramfield
