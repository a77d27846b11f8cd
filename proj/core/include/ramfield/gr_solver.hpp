#pragma once

#include <ramfield/formal_group.hpp>
#include <ramfield/series.hpp>

#include <boost/rational.hpp>

#include <optional>
#include <string>
#include <vector>

namespace ramfield {

using Rational = boost::rational<long>;

// Pair (g, R) with g two-sided, R one-sided; prec is the p-adic precision to
// which the functional equation is claimed, [i_lo, i_hi] the index window on
// which it is checked. Coefficient precision of g, R may exceed prec.
struct GRPair {
    int p = 0;
    int prec = 0;
    int i_lo = 0;
    int i_hi = 0;
    XSeries g;
    XSeries R;
};

struct ResidualReport {
    // min valuation of LHS - RHS over indices <= i_hi; equals computed_prec
    // when everything vanishes at that precision.
    long residual_valuation = 0;
    bool vanishes_at_computed_prec = false;
    int computed_prec = 0;
    // Lowest index carrying a coefficient of minimal valuation (if any).
    std::optional<int> worst_index;
    bool cond1 = false;
    bool cond2 = false;
    bool cond3 = false;
    std::vector<std::string> condition_failures;
    bool window_adequate = false;
    long known_through_exponent = 0;
    int lambda = 0;
    int group_degree = 0;
};

// Lower bound on v(g_i) for i <= -1, floors toward -infinity.
long condition3_bound(int p, int i);

bool check_condition1(const GRPair& pair, std::vector<std::string>* why = nullptr);
bool check_condition2(const GRPair& pair, std::vector<std::string>* why = nullptr);
bool check_condition3(const GRPair& pair, std::vector<std::string>* why = nullptr);

// Weight parameter and cap used to evaluate the functional equation.
int residual_lambda(const GRPair& pair);
int required_group_degree(const GRPair& pair, int compute_prec);

// LHS - RHS of g(X) +_G [p]_G R(g(X), T) = g(X +_G R([p]_G X, T^p)) as a raw
// series modulo p^compute_prec, exact through exponent e(i_hi) when the law
// is large enough.
Series gr_residual(const GRPair& pair, const GroupLaw& law, int compute_prec);

ResidualReport verify_gr(const GRPair& pair, const GroupLaw& law);
// Same, with a law sized by required_group_degree.
ResidualReport verify_gr(const GRPair& pair);

GRPair builtin_gr_p2(int p, int coeff_prec = 20);

struct SolveOptions {
    // Choose free correction coefficients so that the next level stays
    // solvable (needed beyond prec 2 because of degenerate indices).
    bool lookahead = false;
    // Extra T-degrees searched on each side of the residual's T-support.
    int t_margin = -1;  // default: 2p
};

// Group-law degree needed by solve_gr for this window.
int solver_group_degree(int p, int prec, int i_lo, int i_hi, const SolveOptions& opts = {});

GRPair solve_gr(int p, int prec, int i_lo, int i_hi, const GroupLaw& law,
                const SolveOptions& opts = {});
// Same, with a law sized by solver_group_degree.
GRPair solve_gr(int p, int prec, int i_lo, int i_hi, const SolveOptions& opts = {});

// Linearisation of the residual modulo p at (g, R) = (X, TX): images of
// T^t X^{e_i} in g (kind 'g') or in R (kind 'R').
struct LinearColumn {
    char kind;
    int index;
    int texp;
    Series image;  // modulo p
};
LinearColumn linear_column(const GroupLaw& law, char kind, int index, int texp, long emax);

enum class EquivVerdict { strict, non_strict, fail };

struct EquivIndexReport {
    char kind;  // 'g' or 'R'
    int index;
    Rational bound;
    long valuation;  // kInfVal when the representatives agree
    bool vacuous;
};

struct EquivReport {
    EquivVerdict verdict = EquivVerdict::fail;
    std::vector<EquivIndexReport> indices;
};

// Approximation inequalities between two pairs for towers of height n.
EquivReport approx_equiv_check(const GRPair& ref, const GRPair& cand, int n);
// None when n = 1 (no constraint on g).
std::optional<Rational> g_bound(int p, int n, int i);

const char* to_string(EquivVerdict v);

}  // namespace ramfield
