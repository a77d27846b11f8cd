#pragma once

#include <ramfield/laurent.hpp>

#include <map>
#include <optional>
#include <string>

namespace ramfield {

// Laurent series in X with coefficients in O / p^prec.
//
// Truncation bookkeeping uses the weight w(e, c) = e + lambda * v(c) of a
// term c X^e. Invariant: (true series) - (stored terms) is a sum of terms of
// weight >= tail. A term of weight >= tail with v(c) < prec has
// e >= tail - lambda * (prec - 1), so every exponent <= known_hi() is exact.
// Weights add under multiplication; when all operands have non-negative
// weight, terms of weight >= cap can be dropped without touching exponents
// below cap - lambda * (prec - 1).
class Series {
public:
    Series() = default;
    Series(int p, int prec, int lambda, long tail = kInfVal);

    static Series monomial(int p, int prec, int lambda, int e, const Laurent& c);
    static Series x(int p, int prec, int lambda);  // the series X

    int p() const { return p_; }
    int prec() const { return prec_; }
    int lambda() const { return lambda_; }
    long tail() const { return tail_; }
    bool is_exact() const { return tail_ >= kInfVal; }
    bool is_zero() const { return terms_.empty(); }
    const std::map<int, Laurent>& terms() const { return terms_; }
    Laurent coeff(int e) const;

    long known_hi() const;
    long weight(int e, const Laurent& c) const;
    long min_weight() const;  // kInfVal when empty
    int min_exp() const;      // requires non-empty
    int max_exp() const;

    void add_term(int e, const Laurent& c);
    Series& lower_tail(long t);  // tail = min(tail, t) and prune
    Series& prune(long cap);      // drop terms of weight >= cap; tail = min(tail, cap)
    Series truncated_exp(long emax) const;  // keep e <= emax; omitted terms have weight >= emax + 1
    Series with_lambda(int lambda) const;   // exact series only
    Series with_prec(int prec) const;

    Series operator-() const;
    Series& operator+=(const Series& o);
    Series& operator-=(const Series& o);
    friend Series operator+(Series a, const Series& b) { return a += b; }
    friend Series operator-(Series a, const Series& b) { return a -= b; }

    Series scaled(const Laurent& c) const;  // c must be integral
    Series scaled(Laurent::Coeff c) const;
    Series times_p_power(int k) const;
    Series scale_T(int m) const;
    Series shift_X(int k) const;

    bool equals(const Series& o) const { return terms_ == o.terms_; }

    std::string debug_string() const;

private:
    friend Series mul(const Series&, const Series&, long);

    int p_ = 0;
    int prec_ = 0;
    int lambda_ = 1;
    long tail_ = kInfVal;
    std::map<int, Laurent> terms_;
};

// Product with weight cap (terms of weight >= cap dropped). Operands must
// share p, prec and lambda. Requires non-negative weights when cap is finite.
Series mul(const Series& a, const Series& b, long cap = kInfVal);

// s^m for m >= 0 (any s) or m < 0 (s = u X (1 + h), u a unit, h of positive
// weight). Terms of weight >= cap are dropped; the binomial expansion for
// m < 0 is cut exactly where all omitted terms reach weight cap.
Series power(const Series& s, long m, long cap);

// outer(inner) = sum_e o_e inner^e. inner must have a unit coefficient at X^1
// and the remainder positive weight, or X-order >= 1 with non-negative outer
// exponents.
Series compose(const Series& outer, const Series& inner, long cap);

// Compositional inverse of R (unit coefficient at X^1, remaining exponents
// > 1), exact through exponent emax.
Series reversion(const Series& R, long emax);

// Minimal weight cap that keeps every exponent <= emax exact.
inline long cap_for_exponent(long emax, int lambda, int prec) {
    return emax + static_cast<long>(lambda) * (prec - 1) + 1;
}

// ---------------------------------------------------------------------------

enum class XKind { two_sided, nonneg };

// Series sum_i c_i X^{i(p-1)+1}. entries are exact for i <= i_hi; when
// `exact` the stored finite data is the whole series.
class XSeries {
public:
    XSeries() = default;
    XSeries(int p, int prec, XKind kind);

    int p() const { return p_; }
    int prec() const { return prec_; }
    XKind kind() const { return kind_; }
    bool exact() const { return !i_hi_.has_value(); }
    const std::map<int, Laurent>& entries() const { return entries_; }
    Laurent coeff(int i) const;
    void set(int i, const Laurent& c);

    int exponent(int i) const { return i * (p_ - 1) + 1; }
    int i_lo() const;
    int i_hi() const;  // max stored index when exact
    std::optional<int> truncation() const { return i_hi_; }
    void set_truncation(std::optional<int> i_hi);

    Series to_series(int lambda) const;
    // Asserts exponent closure; entries above the known window are dropped.
    static XSeries from_series(const Series& s, XKind kind);

    XSeries with_prec(int prec) const;
    // Same residues read at a new precision (reduces or lifts).
    XSeries at_prec(int prec) const;
    bool operator==(const XSeries& o) const {
        return p_ == o.p_ && prec_ == o.prec_ && kind_ == o.kind_ && i_hi_ == o.i_hi_ &&
               entries_ == o.entries_;
    }

private:
    int p_ = 0;
    int prec_ = 0;
    XKind kind_ = XKind::two_sided;
    std::map<int, Laurent> entries_;
    std::optional<int> i_hi_;
};

XSeries xseries_compose(const XSeries& outer, const XSeries& inner, int lambda = 0);
XSeries xseries_reversion(const XSeries& R, int i_hi);

// Smallest lambda >= p - 1 giving every term of s weight >= 1 (terms with
// e < 1 need v(c) >= 1). Throws DivergentComposition when impossible.
int choose_lambda(const XSeries& s);

}  // namespace ramfield
