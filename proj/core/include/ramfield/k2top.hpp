#pragma once

#include <ramfield/bigint.hpp>
#include <ramfield/padic.hpp>

#include <map>
#include <optional>
#include <utility>
#include <vector>

namespace ramfield {

// Order of the generator {1 - p t^j, t}: p^{v_p(j)+1}; nullopt (infinite)
// for j = 0.
std::optional<Int> generator_order(int p, long j);

// sum_j n_j {1 - p t^j, t}. n0 has val >= 0 and relative precision at most
// prec (so p^k n0 never collapses to 0); torsion[j] lies in (0, p^{v_p(j)+1}).
struct K2Element {
    int p = 0;
    long prec = 0;
    PadicScalar n0;
    std::map<long, Int> torsion;
};

K2Element k2_zero(int p, long prec);
K2Element k2_generator(int p, long j, long prec);

// Accumulate per j, reduce modulo the generator order, drop zeros.
K2Element k2_normal_form(int p, long prec, const std::vector<std::pair<long, Int>>& raw);

K2Element k2_add(const K2Element& x, const K2Element& y);
K2Element k2_neg(const K2Element& x);
K2Element k2_scalar_mul(const Int& c, const K2Element& x);

bool k2_is_zero(const K2Element& x);
// Equal at the common precision of the n0 coordinates.
bool k2_equal(const K2Element& x, const K2Element& y);

}  // namespace ramfield
