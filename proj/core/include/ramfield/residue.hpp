#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace ramfield {

// F_{p^m} = F_p[a]/(f), f the lexicographically first monic irreducible of
// degree m. Elements are coefficient vectors of length m in [0, p).
class FiniteField {
public:
    using Elem = std::vector<std::int64_t>;

    FiniteField() = default;
    FiniteField(int p, int m);

    int p() const { return p_; }
    int m() const { return m_; }
    std::int64_t order() const { return q_; }
    const std::vector<std::int64_t>& modulus() const { return modulus_; }

    Elem zero() const { return Elem(static_cast<std::size_t>(m_), 0); }
    Elem one() const { return from_int(1); }
    Elem from_int(std::int64_t c) const;
    Elem gen() const;  // a; equals 0 when m = 1
    // a^k, k < m: the F_p-basis used by the catalogs
    Elem basis(int k) const;

    bool is_zero(const Elem& x) const;
    Elem add(const Elem& x, const Elem& y) const;
    Elem sub(const Elem& x, const Elem& y) const;
    Elem neg(const Elem& x) const;
    Elem mul(const Elem& x, const Elem& y) const;
    Elem inv(const Elem& x) const;
    Elem pow(Elem x, std::int64_t e) const;
    Elem frobenius(const Elem& x) const { return pow(x, p_); }
    Elem pth_root(const Elem& x) const;  // inverse of the Frobenius

    // Index in [0, q) for enumeration; inverse of element(k).
    std::int64_t index(const Elem& x) const;
    Elem element(std::int64_t k) const;

    std::string to_string(const Elem& x) const;

private:
    int p_ = 0;
    int m_ = 0;
    std::int64_t q_ = 0;
    std::vector<std::int64_t> modulus_;  // monic, size m + 1
};

// Polynomial in t over F_q, lowest degree first, no trailing zeros.
using FqPoly = std::vector<FiniteField::Elem>;

// num/den with gcd 1 and den monic. Elements of a finite residue field are
// constants (den = 1, deg num <= 0).
struct ResidueElement {
    FqPoly num;
    FqPoly den;
};

enum class ResidueKind { prime_field, finite_field, rational_function_field };
const char* to_string(ResidueKind k);

class ResidueField {
public:
    static ResidueField prime(int p);
    static ResidueField finite(int p, int m);
    static ResidueField rational_function(int p, int m);

    ResidueKind kind() const { return kind_; }
    int p() const { return F_.p(); }
    int m() const { return F_.m(); }
    bool is_perfect() const { return kind_ != ResidueKind::rational_function_field; }
    const FiniteField& constants() const { return F_; }

    ResidueElement zero() const;
    ResidueElement one() const;
    ResidueElement constant(const FiniteField::Elem& c) const;
    ResidueElement from_int(std::int64_t c) const;
    // c t^e, e of either sign; only for rational function fields when e != 0.
    ResidueElement monomial(const FiniteField::Elem& c, long e) const;
    ResidueElement t_power(long e) const { return monomial(F_.one(), e); }
    // num/den from coefficient lists (lowest degree first), reduced here.
    ResidueElement fraction(FqPoly num, FqPoly den) const;

    bool is_zero(const ResidueElement& x) const { return x.num.empty(); }
    bool equal(const ResidueElement& x, const ResidueElement& y) const;
    ResidueElement add(const ResidueElement& x, const ResidueElement& y) const;
    ResidueElement sub(const ResidueElement& x, const ResidueElement& y) const;
    ResidueElement neg(const ResidueElement& x) const;
    ResidueElement mul(const ResidueElement& x, const ResidueElement& y) const;
    ResidueElement scale(const ResidueElement& x, std::int64_t c) const;
    ResidueElement inv(const ResidueElement& x) const;
    ResidueElement div(const ResidueElement& x, const ResidueElement& y) const { return mul(x, inv(y)); }
    ResidueElement pow(const ResidueElement& x, long e) const;
    ResidueElement frobenius_power(const ResidueElement& x, int k) const;  // x^{p^k}

    std::string to_string(const ResidueElement& x) const;

private:
    ResidueField(ResidueKind kind, int p, int m) : kind_(kind), F_(p, m) {}
    ResidueElement reduce(FqPoly num, FqPoly den) const;

    ResidueKind kind_;
    FiniteField F_;
};

// b = r^{p^m} for some r in k; returns r when so. b != 0.
std::optional<ResidueElement> is_pm_power(const ResidueField& k, const ResidueElement& b, int m);

// A degree-p cyclic extension with residue datum b embeds into a cyclic
// extension of degree p^n iff b is a p^{n-1}-th power.
bool embeddable(const ResidueField& k, const ResidueElement& b, int n);

// No nonzero F_p-combination of `elems` lies in k^{p^i}. Exhaustive when the
// combination count is at most `budget`, else the first `budget` combinations
// in enumeration order.
bool independent_mod_powers(const ResidueField& k, const std::vector<ResidueElement>& elems, int i,
                            std::int64_t budget = 50000);

// Truncated F_p-basis: of k^{p^{i-1}}/k^{p^i} (top = false) or of k^{p^{i-1}}
// itself (top = true). Representatives c t^{e p^{i-1}}, c over the basis of
// F_q, 1 <= e p^{i-1} <= bound (p not dividing e unless top). Finite fields
// give the empty set for the quotient and the basis of F_q for top.
std::vector<ResidueElement> quotient_basis(const ResidueField& k, int i, int bound, bool top = false);

struct CatalogEntry {
    int i = 0;
    ResidueElement d;
    std::string d_text;
    std::string equation;  // level-1 defining equation
    bool feeds_tower = false;  // i = n: input of the degree-p^n tower
};

struct BasisCatalog {
    int n = 0;
    int bound = 0;
    std::vector<CatalogEntry> entries;
};

BasisCatalog generator_catalog(const ResidueField& k, int n, int bound);

}  // namespace ramfield
