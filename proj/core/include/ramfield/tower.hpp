#pragma once

#include <ramfield/bigint.hpp>
#include <ramfield/padic.hpp>

#include <boost/rational.hpp>

#include <string>
#include <vector>

namespace ramfield {

// Element of K(b_1, ..., b_j), K = Q_p, in the monomial basis
//   x = p^{-D} * sum_a num[a] * b_1^{a_1} ... b_j^{a_j},   0 <= a_k < p,
// flat index a = a_1 + p a_2 + ... + p^{j-1} a_j. Lower levels embed as a
// prefix. prec is an absolute precision in units of 1/e (e = p^height of the
// owning tower); kInfVal marks an exact representative.
struct TowerElement {
    int level = 0;
    long D = 0;
    std::vector<Int> num;
    long prec = kInfVal;

    bool is_exact() const { return prec >= kInfVal; }
    bool is_zero() const;  // zero representative (possibly inexact zero)
};

// Valuation in units of 1/e. `exact` is false when the element is zero at
// its precision; value is then the precision (a lower bound).
struct TowerValuation {
    long value = kInfVal;
    bool exact = true;
};

// Artin-Schreier tower b_k^p - b_k = c_k with c_k at level k-1. Monomials
// b^a have pairwise distinct valuations mod Z, so v is computed termwise.
class Tower {
public:
    // height: planned number of levels (fixes e = p^height);
    // prec: working absolute precision in units of v_K (p has valuation 1).
    Tower(int p, int height, long prec);

    // Appends b_{level+1}^p - b_{level+1} = c. c becomes an exact
    // representative. Throws NotTotallyRamified unless v(c) < 0 has
    // denominator exactly p^{level} (single Newton segment of slope v(c)/p).
    void add_level(const TowerElement& c);

    int p() const { return p_; }
    int height() const { return height_; }
    int levels() const { return static_cast<int>(c_.size()); }
    long e() const { return e_; }
    long prec() const { return prec_; }
    long work() const { return W_; }  // prec * e
    int dim(int level) const { return static_cast<int>(dim_[level]); }
    const TowerElement& c(int k) const { return c_.at(k - 1); }
    // -e * v(b_k), positive.
    long beta_weight(int k) const { return Wk_.at(k - 1); }
    long monomial_weight(long a) const;  // -e * v(b^a)
    boost::rational<long> beta_valuation(int k) const { return {-Wk_.at(k - 1), e_}; }

    TowerElement zero(int level) const;
    TowerElement one(int level) const { return from_int(1, level); }
    TowerElement from_int(const Int& x, int level) const;
    TowerElement from_rational(const Int& num, long D, int level) const;
    TowerElement from_scalar(const PadicScalar& x, int level) const;
    TowerElement beta(int k) const;
    TowerElement monomial(long a, const Int& num, long D, int level) const;

    TowerElement lift(const TowerElement& x, int level) const;
    TowerElement add(const TowerElement& x, const TowerElement& y) const;
    TowerElement sub(const TowerElement& x, const TowerElement& y) const;
    TowerElement neg(const TowerElement& x) const;
    TowerElement mul(const TowerElement& x, const TowerElement& y) const;
    TowerElement mul_int(const TowerElement& x, const Int& k) const;
    TowerElement mul_p_power(const TowerElement& x, long k) const;  // times p^k, k any sign
    TowerElement inv(const TowerElement& x) const;
    TowerElement pow(const TowerElement& x, long m) const;
    // Cap precision at prec (units 1/e) and truncate.
    TowerElement with_prec(const TowerElement& x, long prec) const;

    TowerValuation valuation(const TowerElement& x) const;
    // v(x) as a rational via v_p(det M_x) / p^j on the level-j basis.
    boost::rational<long> norm_valuation(const TowerElement& x) const;
    // Residue in F_p of an element of valuation >= 0.
    long residue(const TowerElement& x) const;
    // Dominant monomial index (attains the valuation); -1 for zero.
    long dominant_index(const TowerElement& x) const;

    // Exact coefficient of b^a as a p-adic scalar (relative precision from
    // the element precision, capped at prec + 4 digits when exact).
    PadicScalar coefficient(const TowerElement& x, long a) const;
    std::vector<int> digits(long a, int level) const;

    std::string to_string(const TowerElement& x) const;

private:
    void truncate(TowerElement& x) const;
    void normalize(TowerElement& x) const;
    void mul_rec(int j, const Int* x, const Int* y, Int* out) const;
    TowerElement inv_monomial(long a, const Int& num, long D, int level) const;

    int p_;
    int height_;
    long prec_;
    long e_;
    long W_;
    std::vector<long> dim_;
    std::vector<TowerElement> c_;
    std::vector<std::vector<Int>> cnum_;  // c_k numerators scaled to a non-negative exponent
    std::vector<long> cD_;                // that exponent
    std::vector<long> K_;  // exact level-j products carry an extra p^{-K_j}
    std::vector<long> Wk_;
    std::vector<TowerElement> binv_;  // b_k^{-1} = (b_k^{p-1} - 1) / c_k
};

}  // namespace ramfield
