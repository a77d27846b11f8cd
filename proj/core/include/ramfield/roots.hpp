#pragma once

#include <ramfield/tower.hpp>

#include <vector>

namespace ramfield {

// Polynomial sum f[k] X^k with coefficients in a tower field.
using TowerPoly = std::vector<TowerElement>;

struct CertifiedRoot {
    TowerElement value;
    // v(f(r)) in units of 1/e; a lower bound when f(r) is zero at precision.
    long residual = 0;
    bool residual_is_bound = false;
    long derivative = 0;  // v(f'(r)), kInfVal when unknown
    // v(f(r)) > 2 v(f'(r)): a true root lies within residual - derivative.
    bool hensel = false;
};

TowerElement poly_eval(const Tower& T, const TowerPoly& f, const TowerElement& x);
TowerPoly poly_derivative(const Tower& T, const TowerPoly& f);
// g(W) = f(x0 + W).
TowerPoly taylor_shift(const Tower& T, const TowerPoly& f, const TowerElement& x0);

// All roots of f in the level-`level` field of T, in canonical order
// (lexicographic on the coefficient vector of the representative).
// Throws InsufficientPrecision when candidates cannot be separated.
std::vector<CertifiedRoot> find_roots(const Tower& T, const TowerPoly& f, int level);

// Lexicographic comparison on normalised representatives.
bool canonical_less(const TowerElement& a, const TowerElement& b);

}  // namespace ramfield
