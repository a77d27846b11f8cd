#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <limits>
#include <string>

namespace ramfield {

using Int = boost::multiprecision::cpp_int;

// Valuation of zero.
inline constexpr long kInfVal = std::numeric_limits<long>::max() / 4;

bool is_prime(long p);
void require_prime(long p);  // p prime and p > 3

Int ipow(const Int& base, unsigned long e);
Int pow_p(int p, long e);  // cached for small e

// v_p(x); kInfVal for x == 0.
long vp(const Int& x, int p);
long vp(std::int64_t x, int p);

// Least non-negative residue.
Int mod(const Int& x, const Int& m);

// Inverse of a modulo m; a must be coprime to m.
Int inv_mod(const Int& a, const Int& m);

// Floor division for longs.
inline long floor_div(long a, long b) {
    long q = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
    return q;
}

inline long ceil_div(long a, long b) { return -floor_div(-a, b); }

std::string to_string(const Int& x);
Int int_from_string(const std::string& s);

}  // namespace ramfield
