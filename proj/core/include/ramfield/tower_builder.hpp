#pragma once

#include <ramfield/gr_solver.hpp>
#include <ramfield/padic.hpp>
#include <ramfield/roots.hpp>
#include <ramfield/tower.hpp>

#include <boost/rational.hpp>

#include <optional>
#include <string>
#include <vector>

namespace ramfield {

enum class TowerSource { solved_gr, builtin_p2, explicit_p2, custom };
// Argument fed to the S_i, g_i and to the contained-zero polynomial:
// d^{p^{n-j}} (direct) or its inverse.
enum class EvalConvention { direct, inverse };

const char* to_string(TowerSource s);
const char* to_string(EvalConvention c);
TowerSource tower_source_from_string(const std::string& s);
EvalConvention eval_convention_from_string(const std::string& s);

// Term num * p^{-D} * b_1^{a_1} ... of a custom right-hand side.
struct RhsTerm {
    std::vector<int> exps;
    Int num;
    long D = 0;
};

struct TowerSpec {
    int p = 5;
    int n = 2;
    Int d = 1;  // unit of Z_p, given by an integer representative
    long prec = 12;
    TowerSource source = TowerSource::builtin_p2;
    EvalConvention convention = EvalConvention::direct;
    std::optional<GRPair> pair;                // solved_gr / builtin_p2
    std::vector<std::vector<RhsTerm>> custom;  // custom: c_1..c_n
};

// c_j from a (g, R) pair; `T` holds levels 1..j-1 already.
TowerElement build_rhs(const Tower& T, const GRPair& pair, const Int& d, int n, int j, EvalConvention conv);

// c_1, c_2 of the explicit degree-p^2 equations (n <= 2).
TowerElement explicit_p2_rhs(const Tower& T, const Int& d, int j);

struct LevelCertificate {
    int level = 0;
    boost::rational<long> v_c;             // v(c_j)
    boost::rational<long> beta_valuation;  // v(b_j) from the norm
    boost::rational<long> expected;        // -(1/p + ... + 1/p^j)
    bool newton_single_segment = false;    // slope v(c_j)/p with denominator p^j
    bool valuation_ok = false;
};

struct BuiltTower {
    TowerSpec spec;
    Tower tower;
    std::vector<LevelCertificate> levels;
};

// Throws NotTotallyRamified when a level fails the Newton-polygon check.
BuiltTower build_tower(const TowerSpec& spec);

// Roots of X^p - X + p^{-1} a, a = d^{p^{n-1}} (direct) or its inverse,
// inside the top level of the tower.
struct ContainedZero {
    EvalConvention convention;
    std::vector<CertifiedRoot> roots;
    bool found() const { return !roots.empty(); }
};
ContainedZero contained_zero(const BuiltTower& bt, EvalConvention conv);

}  // namespace ramfield
