#pragma once

#include <ramfield/padic.hpp>

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

namespace ramfield {

__extension__ typedef __int128 i128;

// Laurent polynomial in T over Z_p / p^prec: the coefficient ring O of the
// series pair, truncated p-adically. Coefficients are residues in
// [0, p^prec) stored sparsely; none is zero. v(T) = 0.
class Laurent {
public:
    using Coeff = std::int64_t;
    using Term = std::pair<int, Coeff>;

    Laurent() = default;
    Laurent(int p, int prec);

    static Laurent constant(int p, int prec, Coeff c);
    static Laurent monomial(int p, int prec, int texp, Coeff c);
    // Coefficients must be p-adic integers; they are reduced mod p^prec.
    static Laurent from_scalars(int p, int prec, const std::map<int, PadicScalar>& coeffs);
    static Laurent from_residues(int p, int prec, const std::map<int, Int>& coeffs);

    int p() const { return p_; }
    int prec() const { return prec_; }
    Coeff modulus() const { return mod_; }
    const std::vector<Term>& terms() const { return terms_; }
    std::size_t size() const { return terms_.size(); }
    bool is_zero() const { return terms_.empty(); }
    // min p-adic valuation of the coefficients; kInfVal for zero.
    long valuation() const;
    int min_texp() const { return terms_.front().first; }
    int max_texp() const { return terms_.back().first; }

    Coeff residue_at(int texp) const;
    PadicScalar coeff(int texp) const;  // absolute precision prec

    Laurent operator-() const;
    Laurent& operator+=(const Laurent& o);
    Laurent& operator-=(const Laurent& o);
    friend Laurent operator+(Laurent a, const Laurent& b) { return a += b; }
    friend Laurent operator-(Laurent a, const Laurent& b) { return a -= b; }
    friend Laurent operator*(const Laurent& a, const Laurent& b);
    friend bool operator==(const Laurent& a, const Laurent& b) {
        return a.p_ == b.p_ && a.prec_ == b.prec_ && a.terms_ == b.terms_;
    }

    Laurent scaled(Coeff c) const;        // c is reduced mod p^prec
    Laurent times_p_power(int k) const;   // multiply by p^k, k >= 0
    // Exact division by p^k; result known mod p^{prec-k}. Requires divisibility.
    Laurent div_p_power(int k) const;

    Laurent scale_T(int m) const;  // T -> T^m, m >= 1
    Laurent shift_T(int k) const;  // multiply by T^k
    Laurent with_prec(int prec) const;  // reduce to lower precision
    Laurent lifted_prec(int prec) const;  // same residues, read at higher precision

    // Invertible iff exactly one coefficient is prime to p.
    bool is_unit() const;
    Laurent inverse() const;

    // Sum f_e x^e; requires val(x) == 0.
    PadicScalar eval(const PadicScalar& x) const;

private:
    void push_reduced(int e, Coeff c);  // appends, c already reduced
    static Coeff mulmod(Coeff a, Coeff b, Coeff m) {
        return static_cast<Coeff>((static_cast<i128>(a) * b) % m);
    }

    int p_ = 0;
    int prec_ = 0;
    Coeff mod_ = 1;
    std::vector<Term> terms_;
};

// Largest precision N with p^N < 2^62 (the residue representation limit).
int laurent_max_prec(int p);

// "c*T^e + ..." with residues in [0, p^prec).
std::string to_string(const Laurent& a);

}  // namespace ramfield
