#include <ramfield/errors.hpp>
#include <ramfield/tower.hpp>

#include <algorithm>
#include <sstream>

namespace ramfield {

namespace {

long sat_add(long a, long b) {
    if (a >= kInfVal || b >= kInfVal) return kInfVal;
    return a + b;
}

bool all_zero(const Int* x, long n) {
    for (long i = 0; i < n; ++i)
        if (x[i] != 0) return false;
    return true;
}

}  // namespace

bool TowerElement::is_zero() const {
    return std::all_of(num.begin(), num.end(), [](const Int& v) { return v == 0; });
}

Tower::Tower(int p, int height, long prec) : p_(p), height_(height), prec_(prec) {
    require_prime(p);
    if (height < 1) throw InvalidArgument("tower height must be >= 1");
    if (prec < 1) throw InvalidArgument("tower precision must be >= 1");
    e_ = 1;
    dim_.push_back(1);
    for (int k = 0; k < height; ++k) {
        e_ *= p;
        dim_.push_back(dim_.back() * p);
    }
    W_ = prec * e_;
    K_.push_back(0);
}

long Tower::monomial_weight(long a) const {
    long w = 0;
    for (std::size_t k = 0; a > 0; ++k, a /= p_) w += (a % p_) * Wk_.at(k);
    return w;
}

std::vector<int> Tower::digits(long a, int level) const {
    std::vector<int> d(static_cast<std::size_t>(level), 0);
    for (int k = 0; k < level; ++k, a /= p_) d[k] = static_cast<int>(a % p_);
    return d;
}

void Tower::add_level(const TowerElement& c0) {
    const int k = levels() + 1;
    if (k > height_) throw InvalidArgument("tower is already at its planned height");
    if (c0.level > k - 1) throw InvalidArgument("right-hand side lives above the previous level");
    TowerElement c = lift(c0, k - 1);
    c.prec = kInfVal;
    normalize(c);
    const TowerValuation v = valuation(c);
    const long unit = e_ / dim_[k - 1];  // value-group step at level k-1
    if (c.is_zero() || v.value >= 0)
        throw NotTotallyRamified("level " + std::to_string(k) + ": v(c) = " + std::to_string(v.value) + "/" +
                                 std::to_string(e_) + " is not negative");
    if ((v.value / unit) % p_ == 0)
        throw NotTotallyRamified("level " + std::to_string(k) + ": Newton slope v(c)/p = " +
                                 std::to_string(v.value) + "/" + std::to_string(e_ * p_) +
                                 " lacks denominator p at this level");
    c_.push_back(c);
    std::vector<Int> cn = c.num;
    long cD = c.D;
    if (cD < 0) {
        const Int s = pow_p(p_, -cD);
        for (auto& x : cn) x *= s;
        cD = 0;
    }
    cnum_.push_back(std::move(cn));
    cD_.push_back(cD);
    K_.push_back(2 * K_.back() + cD);
    Wk_.push_back(-v.value / p_);
    // b^{-1} = (b^{p-1} - 1) / c
    const TowerElement b = beta(k);
    const TowerElement num = sub(pow(b, p_ - 1), one(k));
    binv_.push_back(mul(num, lift(inv(c), k)));
}

TowerElement Tower::zero(int level) const {
    TowerElement x;
    x.level = level;
    x.num.assign(static_cast<std::size_t>(dim_.at(level)), Int(0));
    return x;
}

TowerElement Tower::from_int(const Int& v, int level) const {
    TowerElement x = zero(level);
    x.num[0] = v;
    normalize(x);
    return x;
}

TowerElement Tower::from_rational(const Int& num, long D, int level) const {
    TowerElement x = zero(level);
    x.num[0] = num;
    x.D = D;
    normalize(x);
    return x;
}

TowerElement Tower::from_scalar(const PadicScalar& s, int level) const {
    TowerElement x = zero(level);
    if (s.is_zero()) {
        x.prec = s.absprec() >= kInfVal ? kInfVal : s.absprec() * e_;
        return x;
    }
    x.num[0] = s.unit();
    x.D = -s.val();
    x.prec = s.absprec() * e_;
    truncate(x);
    normalize(x);
    return x;
}

TowerElement Tower::beta(int k) const {
    if (k < 1 || k > levels()) throw InvalidArgument("no generator b_" + std::to_string(k));
    TowerElement x = zero(k);
    x.num[static_cast<std::size_t>(dim_[k - 1])] = 1;
    return x;
}

TowerElement Tower::monomial(long a, const Int& num, long D, int level) const {
    TowerElement x = zero(level);
    x.num.at(static_cast<std::size_t>(a)) = num;
    x.D = D;
    normalize(x);
    return x;
}

TowerElement Tower::lift(const TowerElement& x, int level) const {
    if (x.level == level) return x;
    if (x.level > level) throw InvalidArgument("cannot lift an element to a lower level");
    TowerElement y = x;
    y.level = level;
    y.num.resize(static_cast<std::size_t>(dim_.at(level)), Int(0));
    return y;
}

void Tower::normalize(TowerElement& x) const {
    long m = kInfVal;
    for (const auto& v : x.num)
        if (v != 0) m = std::min(m, vp(v, p_));
    if (m >= kInfVal) {
        x.D = 0;
        return;
    }
    if (m == 0) return;
    const Int s = pow_p(p_, m);
    for (auto& v : x.num)
        if (v != 0) v /= s;
    x.D -= m;
}

void Tower::truncate(TowerElement& x) const {
    if (x.is_exact()) return;
    for (std::size_t a = 0; a < x.num.size(); ++a) {
        if (x.num[a] == 0) continue;
        const long m = x.D + ceil_div(x.prec + monomial_weight(static_cast<long>(a)), e_);
        if (m <= 0) x.num[a] = 0;
        else x.num[a] = mod(x.num[a], pow_p(p_, m));
    }
}

TowerElement Tower::with_prec(const TowerElement& x, long prec) const {
    TowerElement y = x;
    y.prec = std::min(y.prec, prec);
    truncate(y);
    normalize(y);
    return y;
}

TowerElement Tower::add(const TowerElement& x0, const TowerElement& y0) const {
    const int level = std::max(x0.level, y0.level);
    const TowerElement x = lift(x0, level), y = lift(y0, level);
    TowerElement z = zero(level);
    z.D = std::max(x.D, y.D);
    const Int sx = pow_p(p_, z.D - x.D), sy = pow_p(p_, z.D - y.D);
    for (std::size_t a = 0; a < z.num.size(); ++a) z.num[a] = x.num[a] * sx + y.num[a] * sy;
    z.prec = std::min(x.prec, y.prec);
    truncate(z);
    normalize(z);
    return z;
}

TowerElement Tower::neg(const TowerElement& x) const {
    TowerElement y = x;
    for (auto& v : y.num) v = -v;
    truncate(y);
    return y;
}

TowerElement Tower::sub(const TowerElement& x, const TowerElement& y) const { return add(x, neg(y)); }

TowerElement Tower::mul_int(const TowerElement& x, const Int& k) const {
    if (k == 0) return zero(x.level);
    TowerElement y = x;
    for (auto& v : y.num) v *= k;
    y.prec = sat_add(y.prec, e_ * vp(k, p_));
    truncate(y);
    normalize(y);
    return y;
}

TowerElement Tower::mul_p_power(const TowerElement& x, long k) const {
    TowerElement y = x;
    y.D -= k;
    y.prec = sat_add(y.prec, k * e_);
    if (y.is_zero()) y.D = 0;
    return y;
}

void Tower::mul_rec(int j, const Int* x, const Int* y, Int* out) const {
    if (j == 0) {
        out[0] = x[0] * y[0];
        return;
    }
    const long B = dim_[j - 1];
    const int p = p_;
    std::vector<Int> z(static_cast<std::size_t>((2 * p - 1) * B), Int(0));
    std::vector<Int> tmp(static_cast<std::size_t>(B));
    std::vector<bool> xz(p), yz(p);
    for (int i = 0; i < p; ++i) {
        xz[i] = all_zero(x + i * B, B);
        yz[i] = all_zero(y + i * B, B);
    }
    for (int i = 0; i < p; ++i) {
        if (xz[i]) continue;
        for (int l = 0; l < p; ++l) {
            if (yz[l]) continue;
            std::fill(tmp.begin(), tmp.end(), Int(0));
            mul_rec(j - 1, x + i * B, y + l * B, tmp.data());
            Int* dst = z.data() + (i + l) * B;
            for (long t = 0; t < B; ++t) dst[t] += tmp[t];
        }
    }
    // b^k = b^{k-p+1} + c b^{k-p} for k >= p; targets stay below p.
    const Int* cn = cnum_[j - 1].data();
    for (int k = 2 * p - 2; k >= p; --k) {
        const Int* zk = z.data() + k * B;
        if (all_zero(zk, B)) continue;
        Int* up = z.data() + (k - p + 1) * B;
        for (long t = 0; t < B; ++t) up[t] += zk[t];
        std::fill(tmp.begin(), tmp.end(), Int(0));
        mul_rec(j - 1, cn, zk, tmp.data());
        Int* dst = out + (k - p) * B;
        for (long t = 0; t < B; ++t) dst[t] += tmp[t];
    }
    const Int s = pow_p(p_, K_[j - 1] + cD_[j - 1]);
    for (int i = 0; i < p; ++i) {
        const Int* zi = z.data() + i * B;
        Int* dst = out + i * B;
        for (long t = 0; t < B; ++t)
            if (zi[t] != 0) dst[t] += zi[t] * s;
    }
}

TowerElement Tower::mul(const TowerElement& x0, const TowerElement& y0) const {
    const int level = std::max(x0.level, y0.level);
    if ((x0.is_exact() && x0.is_zero()) || (y0.is_exact() && y0.is_zero())) return zero(level);
    const TowerElement x = lift(x0, level), y = lift(y0, level);
    TowerElement z = zero(level);
    mul_rec(level, x.num.data(), y.num.data(), z.num.data());
    z.D = x.D + y.D + K_[level];
    const TowerValuation vx = valuation(x), vy = valuation(y);
    z.prec = std::min({sat_add(x.prec, vy.value), sat_add(y.prec, vx.value), W_});
    truncate(z);
    normalize(z);
    return z;
}

TowerValuation Tower::valuation(const TowerElement& x) const {
    long best = kInfVal;
    for (std::size_t a = 0; a < x.num.size(); ++a) {
        if (x.num[a] == 0) continue;
        best = std::min(best, e_ * (vp(x.num[a], p_) - x.D) - monomial_weight(static_cast<long>(a)));
    }
    if (best >= kInfVal) return {x.prec, x.is_exact()};
    if (best >= x.prec) return {x.prec, false};
    return {best, true};
}

long Tower::dominant_index(const TowerElement& x) const {
    long best = kInfVal, arg = -1;
    for (std::size_t a = 0; a < x.num.size(); ++a) {
        if (x.num[a] == 0) continue;
        const long v = e_ * (vp(x.num[a], p_) - x.D) - monomial_weight(static_cast<long>(a));
        if (v < best) {
            best = v;
            arg = static_cast<long>(a);
        }
    }
    return arg;
}

long Tower::residue(const TowerElement& x) const {
    const TowerValuation v = valuation(x);
    if (!v.exact || v.value > 0) return 0;
    if (v.value < 0) throw InvalidArgument("residue of an element of negative valuation");
    // valuation 0 is attained only by the constant monomial
    const Int u = x.num[0] / pow_p(p_, x.D);
    return static_cast<long>(mod(u, Int(p_)));
}

TowerElement Tower::inv_monomial(long a, const Int& num, long D, int level) const {
    // (num p^{-D})^{-1} b^{-a}
    TowerElement bi = one(level);
    const std::vector<int> dg = digits(a, level);
    for (int k = 1; k <= level; ++k)
        for (int r = 0; r < dg[k - 1]; ++r) bi = mul(bi, binv_.at(k - 1));
    const long s = vp(num, p_);
    const Int u = num / pow_p(p_, s);
    // enough digits that the scalar is never the bottleneck
    const long M = prec_ + 4 + (monomial_weight(a) + e_ - 1) / e_ + std::abs(D - s);
    TowerElement sc = from_rational(inv_mod(u, pow_p(p_, M)), s - D, level);
    sc.prec = e_ * (M + D - s);
    return mul(bi, sc);
}

TowerElement Tower::inv(const TowerElement& x) const {
    if (x.is_zero()) {
        if (x.is_exact()) throw DivisionByZero("inverse of zero in the tower");
        throw PrecisionExhausted("inverse of an element that is zero at its precision");
    }
    const TowerValuation v = valuation(x);
    const long a = dominant_index(x);
    TowerElement y = inv_monomial(a, x.num[static_cast<std::size_t>(a)], x.D, x.level);
    const TowerElement one_ = one(x.level);
    // Iterate on exact representatives; err(y) = x^{-1} (1 - x y). Products
    // are capped at W_, so the residual can stall above zero once y has
    // positive valuation; stop there and claim only what r certifies.
    y.prec = kInfVal;
    TowerElement r;
    long last = -kInfVal;
    for (int it = 0;; ++it) {
        if (it > 200) throw PrecisionExhausted("Newton inversion failed to converge");
        r = sub(one_, mul(x, y));
        const long rv = valuation(r).value;
        if (r.is_zero() || rv <= last) break;
        last = rv;
        y = add(y, mul(y, r));
        y.prec = kInfVal;
    }
    y.prec = std::min({W_, sat_add(x.prec, -2 * v.value), sat_add(valuation(r).value, -v.value)});
    truncate(y);
    normalize(y);
    return y;
}

TowerElement Tower::pow(const TowerElement& x, long m) const {
    if (m < 0) return pow(inv(x), -m);
    TowerElement r = one(x.level), b = x;
    while (m > 0) {
        if (m & 1) r = mul(r, b);
        m >>= 1;
        if (m) b = mul(b, b);
    }
    return r;
}

namespace {

// Fraction-free Gaussian elimination (Bareiss) with row pivoting.
Int bareiss_det(std::vector<std::vector<Int>> A) {
    const std::size_t n = A.size();
    Int sign = 1, prev = 1;
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t piv = k;
        while (piv < n && A[piv][k] == 0) ++piv;
        if (piv == n) return 0;
        if (piv != k) {
            std::swap(A[piv], A[k]);
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            for (std::size_t j = k + 1; j < n; ++j) A[i][j] = (A[i][j] * A[k][k] - A[i][k] * A[k][j]) / prev;
            A[i][k] = 0;
        }
        prev = A[k][k];
    }
    return sign * A[n - 1][n - 1];
}

}  // namespace

boost::rational<long> Tower::norm_valuation(const TowerElement& x) const {
    if (x.is_zero()) throw PrecisionExhausted("norm of an element that is zero at its precision");
    const int j = x.level;
    const long n = dim_[j];
    std::vector<std::vector<Int>> M(static_cast<std::size_t>(n), std::vector<Int>(static_cast<std::size_t>(n)));
    std::vector<Int> unit(static_cast<std::size_t>(n), Int(0)), col(static_cast<std::size_t>(n));
    for (long b = 0; b < n; ++b) {
        std::fill(unit.begin(), unit.end(), Int(0));
        unit[static_cast<std::size_t>(b)] = 1;
        std::fill(col.begin(), col.end(), Int(0));
        mul_rec(j, x.num.data(), unit.data(), col.data());
        for (long r = 0; r < n; ++r) M[r][b] = col[r];
    }
    const Int det = bareiss_det(std::move(M));
    if (det == 0) throw PrecisionExhausted("vanishing norm");
    const long vdet = vp(det, p_) - n * (x.D + K_[j]);
    return {vdet, n};
}

PadicScalar Tower::coefficient(const TowerElement& x, long a) const {
    const Int& c = x.num.at(static_cast<std::size_t>(a));
    long abs_cap;
    if (x.is_exact()) abs_cap = kInfVal;
    else abs_cap = ceil_div(x.prec + monomial_weight(a), e_);
    if (c == 0) return PadicScalar::zero(p_, abs_cap);
    const long s = vp(c, p_);
    const long val = s - x.D;
    const long rel = abs_cap >= kInfVal ? prec_ + 4 : std::max(1L, abs_cap - val);
    return PadicScalar::from_parts(p_, val, c / pow_p(p_, s), rel);
}

std::string Tower::to_string(const TowerElement& x) const {
    if (x.is_zero()) return x.is_exact() ? "0" : "O(" + std::to_string(x.prec) + "/" + std::to_string(e_) + ")";
    std::ostringstream os;
    bool first = true;
    for (std::size_t a = 0; a < x.num.size(); ++a) {
        if (x.num[a] == 0) continue;
        if (!first) os << " + ";
        first = false;
        os << ramfield::to_string(x.num[a]);
        if (x.D > 0) os << "/" << p_ << "^" << x.D;
        if (x.D < 0) os << "*" << p_ << "^" << -x.D;
        const auto d = digits(static_cast<long>(a), x.level);
        for (std::size_t k = 0; k < d.size(); ++k)
            if (d[k]) os << "*b" << (k + 1) << "^" << d[k];
    }
    return os.str();
}

}  // namespace ramfield
