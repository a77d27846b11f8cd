#pragma once

#include <ramfield/padic.hpp>
#include <ramfield/roots.hpp>
#include <ramfield/tower.hpp>

#include <boost/rational.hpp>

#include <vector>

namespace ramfield {

// Image of x (an element of `src`) under b_k -> images[k-1], evaluated in `dst`.
TowerElement substitute(const Tower& src, const TowerElement& x, const Tower& dst,
                        const std::vector<TowerElement>& images);

struct AutomorphismTable {
    int p = 0;
    int n = 0;
    // automorphism s: images[s][k-1] = s(b_k); entry 0 is the identity
    std::vector<std::vector<TowerElement>> images;
    std::vector<std::vector<int>> compose;  // compose[s][t] = index of s o t
    std::vector<long> order;
    bool cyclic = false;
    long generator_order = 0;
    int generator = -1;
    // smallest v(image difference) accepted when matching compositions, in
    // units of 1/e; distinct automorphisms differ with valuation <= 0.
    long match_valuation = kInfVal;
};

// Enumerates automorphisms level by level from roots of the defining
// relations. Throws NotGalois when fewer than p^n are found.
AutomorphismTable automorphism_table(const Tower& T);

struct EqualityWitness {
    int level = 0;
    boost::rational<long> valuation;  // v(image of b~_j - b_j)
    bool found = true;                // the defining relation has a root in t1
    bool infinite = false;            // representatives coincide at precision
    boost::rational<long> threshold;  // n - j
};

struct TowerEquality {
    bool equal = false;
    std::vector<EqualityWitness> witness;
    std::vector<TowerElement> images;  // images of b~_j in t1
};

// K(b~_1..b~_n) = K(b_1..b_n) certified by images of b~_j in t1 with
// v(image - b_j) > n - j.
TowerEquality towers_equal(const Tower& t1, const Tower& t2, int n);

enum class AsClass { equal, equal_over_unramified, unclassified };
const char* to_string(AsClass c);

// Degree-p rule for x^p - x = a_1 and x^p - x = a_2 with v(a_i) = -1.
AsClass as_equiv_class(const PadicScalar& a1, const PadicScalar& a2);

}  // namespace ramfield
