#pragma once

#include <ramfield/bigint.hpp>

#include <string>
#include <utility>

namespace ramfield {

// Element of Q_p with capped relative precision: p^val * unit, unit known
// modulo p^prec and prime to p. Zero carries an absolute cap instead
// (known to be divisible by p^absprec; kInfVal when exact).
class PadicScalar {
public:
    PadicScalar() = default;

    static PadicScalar zero(int p, long absprec = kInfVal);
    // x known to relative precision relprec; x == 0 gives zero mod p^relprec.
    static PadicScalar from_int(int p, const Int& x, long relprec);
    static PadicScalar from_parts(int p, long val, const Int& unit, long relprec);
    // num/den with den != 0.
    static PadicScalar from_rational(int p, const Int& num, const Int& den, long relprec);
    static PadicScalar p_power(int p, long e, long relprec) { return from_parts(p, e, 1, relprec); }

    int p() const { return p_; }
    long val() const { return val_; }
    const Int& unit() const { return unit_; }
    long prec() const { return is_zero() ? 0 : prec_; }
    long absprec() const { return is_zero() ? zero_cap_ : sat_add(val_, prec_); }
    bool is_zero() const { return val_ >= kInfVal; }
    bool is_exact_zero() const { return is_zero() && zero_cap_ >= kInfVal; }

    PadicScalar operator-() const;
    friend PadicScalar operator+(const PadicScalar& a, const PadicScalar& b);
    friend PadicScalar operator-(const PadicScalar& a, const PadicScalar& b);
    friend PadicScalar operator*(const PadicScalar& a, const PadicScalar& b);
    friend PadicScalar operator/(const PadicScalar& a, const PadicScalar& b);

    PadicScalar inv() const;
    PadicScalar pow(long m) const;

    // Reduce to absolute precision A (never increases precision).
    PadicScalar with_absprec(long A) const;
    PadicScalar with_relprec(long N) const;

    // value = num * p^{-den_exp}, num an integer, den_exp >= 0.
    std::pair<Int, long> rational_rep() const;
    // Representative in Z when val >= 0.
    Int lift() const;
    // Residue in F_p; requires val >= 0.
    long residue() const;

    // Identical normal form (same value and same precision).
    bool same(const PadicScalar& o) const;
    // Difference is zero at the common precision.
    bool equals_at_precision(const PadicScalar& o) const { return (*this - o).is_zero(); }

    std::string to_string() const;

private:
    static long sat_add(long a, long b) {
        if (a >= kInfVal || b >= kInfVal) return kInfVal;
        return a + b;
    }
    void normalize_from(int p, const Int& x, long absprec);

    int p_ = 0;
    long val_ = kInfVal;
    Int unit_ = 0;
    long prec_ = 0;
    long zero_cap_ = kInfVal;
};

}  // namespace ramfield
