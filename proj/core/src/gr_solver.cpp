#include <ramfield/errors.hpp>
#include <ramfield/gr_solver.hpp>

#include <algorithm>
#include <cstdlib>
#include <map>
#include <set>
#include <sstream>

namespace ramfield {

long condition3_bound(int p, int i) {
    return -static_cast<long>(i) + 2 + floor_div(i, p) + floor_div(i - 2, p);
}

bool check_condition1(const GRPair& pair, std::vector<std::string>* why) {
    bool ok = true;
    const Laurent one = Laurent::constant(pair.p, pair.g.prec(), 1);
    for (const auto& [i, c] : pair.g.entries()) {
        const Laurent d = i == 0 ? c - one : c;
        if (d.valuation() < 1) {
            ok = false;
            if (why) why->push_back("condition (1) fails at g_" + std::to_string(i));
        }
    }
    if (pair.g.entries().count(0) == 0) {
        ok = false;
        if (why) why->push_back("condition (1) fails: g_0 missing");
    }
    return ok;
}

bool check_condition2(const GRPair& pair, std::vector<std::string>* why) {
    const Laurent T = Laurent::monomial(pair.p, pair.R.prec(), 1, 1);
    const bool ok = pair.R.coeff(0) == T;
    if (!ok && why) why->push_back("condition (2) fails: R_0 != T");
    return ok;
}

bool check_condition3(const GRPair& pair, std::vector<std::string>* why) {
    bool ok = true;
    for (const auto& [i, c] : pair.g.entries()) {
        if (i >= 0) continue;
        const long b = condition3_bound(pair.p, i);
        if (c.valuation() < b) {
            ok = false;
            if (why)
                why->push_back("condition (3) fails at g_" + std::to_string(i) + ": v = " +
                               std::to_string(c.valuation()) + " < " + std::to_string(b));
        }
    }
    return ok;
}

namespace {

// Weight parameter valid for every g allowed by condition (3) on [i_lo, -1].
int window_lambda(int p, int i_lo) {
    long lam = p - 1;
    for (int i = std::min(i_lo, 0); i <= -1; ++i) {
        const long e = static_cast<long>(i) * (p - 1) + 1;
        const long b = condition3_bound(p, i);
        if (b <= 0) throw DivergentComposition("condition (3) gives no decay at index " + std::to_string(i));
        lam = std::max(lam, ceil_div(1 - e, b));
    }
    return static_cast<int>(lam);
}

}  // namespace

int residual_lambda(const GRPair& pair) {
    return std::max({choose_lambda(pair.g), choose_lambda(pair.R), pair.p - 1});
}

int required_group_degree(const GRPair& pair, int compute_prec) {
    const int lam = std::max(residual_lambda(pair), window_lambda(pair.p, std::min(pair.i_lo, 0)));
    const long emax = static_cast<long>(pair.i_hi) * (pair.p - 1) + 1;
    return group_degree_for_cap(cap_for_exponent(emax, lam, compute_prec));
}

Series gr_residual(const GRPair& pair, const GroupLaw& law, int N) {
    const int p = pair.p;
    const int lam = std::max(residual_lambda(pair), window_lambda(p, std::min(pair.i_lo, 0)));
    const long emax = static_cast<long>(pair.i_hi) * (p - 1) + 1;
    const long cap = cap_for_exponent(emax, lam, N);
    const Series G = pair.g.at_prec(N).to_series(lam);
    const Series Rs = pair.R.at_prec(N).to_series(lam);
    const Series X = Series::x(p, N, lam);

    const Series RA = compose(Rs, G, cap);
    const Series B = fg_mul_p(RA, cap);
    const Series lhs = fg_add(law, G, B, cap);

    const Series Y = compose(Rs.scale_T(p), fg_mul_p(X, cap), cap);
    const Series C = fg_add(law, X, Y, cap);
    const Series rhs = compose(G, C, cap);
    return lhs - rhs;
}

ResidualReport verify_gr(const GRPair& pair, const GroupLaw& law) {
    ResidualReport rep;
    const int N = pair.prec + 1;
    rep.computed_prec = N;
    rep.cond1 = check_condition1(pair, &rep.condition_failures);
    rep.cond2 = check_condition2(pair, &rep.condition_failures);
    rep.cond3 = check_condition3(pair, &rep.condition_failures);
    rep.lambda = std::max(residual_lambda(pair), window_lambda(pair.p, std::min(pair.i_lo, 0)));
    rep.group_degree = law.maxdeg;
    if (law.prec < N)
        throw PrecisionExhausted("group law precision " + std::to_string(law.prec) + " < " + std::to_string(N));
    const Series phi = gr_residual(pair, law, N);
    const long emax = static_cast<long>(pair.i_hi) * (pair.p - 1) + 1;
    rep.known_through_exponent = phi.known_hi();
    rep.window_adequate = phi.known_hi() >= emax;
    long best = N;
    for (const auto& [e, c] : phi.terms()) {
        if (e > emax || e > phi.known_hi()) break;
        const long v = c.valuation();
        if (v < best) {
            best = v;
            rep.worst_index = static_cast<int>(floor_div(e - 1, pair.p - 1));
        }
    }
    rep.residual_valuation = best;
    rep.vanishes_at_computed_prec = !rep.worst_index.has_value();
    return rep;
}

GRPair builtin_gr_p2(int p, int coeff_prec) {
    require_prime(p);
    GRPair pair;
    pair.p = p;
    pair.prec = 2;
    pair.i_lo = -3;
    pair.i_hi = 2;
    const Int M = pow_p(p, coeff_prec);
    const Int half = inv_mod(Int(2), M);
    const Int ph = mod(Int(p) * half, M);  // p/2
    // g_{-1} = p (T^{1-p} - 1) / 2
    const Laurent gm1 = Laurent::from_residues(p, coeff_prec, {{1 - p, ph}, {0, -ph}});
    // g_0 = 1 + g_{-1} (1 - T^p)
    const Laurent one_minus_tp = Laurent::from_residues(p, coeff_prec, {{0, 1}, {p, -1}});
    const Laurent g0 = Laurent::constant(p, coeff_prec, 1) + gm1 * one_minus_tp;
    pair.g = XSeries(p, coeff_prec, XKind::two_sided);
    pair.g.set(-1, gm1);
    pair.g.set(0, g0);
    pair.R = XSeries(p, coeff_prec, XKind::nonneg);
    pair.R.set(0, Laurent::monomial(p, coeff_prec, 1, 1));
    return pair;
}

// ---------------------------------------------------------------------------
// Lifting solver.

namespace {

struct Unknown {
    char kind;
    int index;
    int texp;
    bool operator<(const Unknown& o) const {
        auto key = [](const Unknown& u) {
            return std::make_tuple(std::abs(u.index), std::abs(u.texp), u.kind == 'g' ? 0 : 1, u.index, u.texp);
        };
        return key(*this) < key(o);
    }
    bool operator==(const Unknown& o) const {
        return kind == o.kind && index == o.index && texp == o.texp;
    }
};

using RowKey = std::pair<int, int>;  // (exponent, T-degree)
using SparseVec = std::map<RowKey, long>;

SparseVec to_sparse_modp(const Series& s, long emax) {
    SparseVec v;
    const int p = s.p();
    for (const auto& [e, c] : s.terms()) {
        if (e > emax) break;
        for (const auto& [t, x] : c.terms()) {
            const long r = static_cast<long>(x % p);
            if (r != 0) v[{e, t}] = r;
        }
    }
    return v;
}

// Linearisation of the residual at (X, TX), modulo p.
class LinearModel {
public:
    // e_lo: lowest X-exponent of an unknown; negative powers need F_X and C0
    // known beyond the output cap.
    LinearModel(const GroupLaw& law, long emax, long e_lo) : p_(law.p), emax_(emax) {
        const int lam = p_ - 1;
        cap_ = cap_for_exponent(emax, lam, 1) + std::max(0L, 1 - e_lo);
        const Series X = Series::x(p_, 1, lam);
        const Series Q = Series::monomial(p_, 1, lam, p_, Laurent::monomial(p_, 1, p_, 1));
        // Enough degree for the mod-p evaluation below cap.
        fx_ = bivar_eval(derivative_x(law.F), 1, X, Q, cap_);
        fy_ = bivar_eval(derivative_y(law.F), 1, X, Q, cap_);
        GroupLaw l1 = law;
        c0_ = fg_add(l1, X, Q, cap_);
    }

    const SparseVec& column(const Unknown& u) {
        auto it = cache_.find(u);
        if (it != cache_.end()) return it->second;
        Series img(p_, 1, p_ - 1);
        if (u.kind == 'g') {
            const int e = u.index * (p_ - 1) + 1;
            const Laurent Tt = Laurent::monomial(p_, 1, u.texp, 1);
            img = mul(fx_, Series::monomial(p_, 1, p_ - 1, e, Tt), cap_) - c0_power(e).scaled(Tt);
        } else {
            const int e = p_ * (u.index * (p_ - 1) + 1);
            const Laurent Tt = Laurent::monomial(p_, 1, p_ * u.texp, 1);
            img = -mul(fy_, Series::monomial(p_, 1, p_ - 1, e, Tt), cap_);
        }
        if (!img.is_exact() && img.known_hi() < emax_)
            throw WindowTooSmall("group law too short for the linear model");
        return cache_.emplace(u, to_sparse_modp(img, emax_)).first->second;
    }

    Series image(const Unknown& u) {
        Series s(p_, 1, p_ - 1);
        for (const auto& [k, v] : column(u)) s.add_term(k.first, Laurent::monomial(p_, 1, k.second, v));
        return s;
    }

private:
    const Series& c0_power(int e) {
        auto it = pow_.find(e);
        if (it == pow_.end()) it = pow_.emplace(e, power(c0_, e, cap_)).first;
        return it->second;
    }

    int p_;
    long emax_;
    long cap_;
    Series fx_, fy_, c0_;
    std::map<int, Series> pow_;
    std::map<Unknown, SparseVec> cache_;
};

struct Solution {
    bool consistent = true;
    std::vector<RowKey> bad_rows;
    std::map<int, long> values;          // column -> value (only nonzero)
    std::vector<int> free_cols;          // non-pivot columns
    std::map<int, std::map<int, long>> null_vectors;  // free column -> full null vector
};

long inv_modp(long a, int p) {
    a %= p;
    if (a < 0) a += p;
    long r = 1, b = a, e = p - 2;
    while (e) {
        if (e & 1) r = r * b % p;
        b = b * b % p;
        e >>= 1;
    }
    return r;
}

// Row-reduce columns (already in priority order) against rhs over F_p.
Solution solve_modp(int p, const std::vector<SparseVec>& cols, const SparseVec& rhs) {
    std::map<RowKey, int> row_index;
    for (const auto& c : cols)
        for (const auto& [k, v] : c) row_index.emplace(k, 0);
    for (const auto& [k, v] : rhs) row_index.emplace(k, 0);
    int r = 0;
    std::vector<RowKey> row_keys;
    for (auto& [k, idx] : row_index) {
        idx = r++;
        row_keys.push_back(k);
    }
    const int nrows = r, ncols = static_cast<int>(cols.size());
    // Dense row-major matrix with rhs as the last column.
    std::vector<std::vector<long>> A(static_cast<std::size_t>(nrows), std::vector<long>(ncols + 1, 0));
    for (int j = 0; j < ncols; ++j)
        for (const auto& [k, v] : cols[j]) A[row_index[k]][j] = ((v % p) + p) % p;
    for (const auto& [k, v] : rhs) A[row_index[k]][ncols] = ((v % p) + p) % p;

    std::vector<int> pivot_row_of_col(static_cast<std::size_t>(ncols), -1);
    std::vector<bool> row_used(static_cast<std::size_t>(nrows), false);
    for (int j = 0; j < ncols; ++j) {
        int piv = -1;
        for (int i = 0; i < nrows; ++i)
            if (!row_used[i] && A[i][j] != 0) {
                piv = i;
                break;
            }
        if (piv < 0) continue;
        row_used[piv] = true;
        pivot_row_of_col[j] = piv;
        const long inv = inv_modp(A[piv][j], p);
        for (int c = 0; c <= ncols; ++c) A[piv][c] = A[piv][c] * inv % p;
        for (int i = 0; i < nrows; ++i) {
            if (i == piv || A[i][j] == 0) continue;
            const long f = A[i][j];
            for (int c = 0; c <= ncols; ++c)
                if (A[piv][c] != 0) A[i][c] = ((A[i][c] - f * A[piv][c]) % p + p) % p;
        }
    }
    Solution sol;
    for (int i = 0; i < nrows; ++i)
        if (!row_used[i] && A[i][ncols] != 0) {
            sol.consistent = false;
            sol.bad_rows.push_back(row_keys[i]);
        }
    for (int j = 0; j < ncols; ++j) {
        if (pivot_row_of_col[j] >= 0) {
            const long v = A[pivot_row_of_col[j]][ncols];
            if (v != 0) sol.values[j] = v;
        } else {
            sol.free_cols.push_back(j);
        }
    }
    for (int f : sol.free_cols) {
        std::map<int, long> nv;
        nv[f] = 1;
        for (int j = 0; j < ncols; ++j) {
            const int pr = pivot_row_of_col[j];
            if (pr >= 0 && A[pr][f] != 0) nv[j] = (p - A[pr][f]) % p;
        }
        sol.null_vectors[f] = std::move(nv);
    }
    return sol;
}

// Target of level l: -(Phi / p^l) mod p on exponents <= emax.
SparseVec level_target(const Series& phi, int level, long emax) {
    SparseVec b;
    const int p = phi.p();
    Laurent::Coeff pl = 1;
    for (int k = 0; k < level; ++k) pl *= p;
    for (const auto& [e, c] : phi.terms()) {
        if (e > emax) break;
        for (const auto& [t, x] : c.terms()) {
            if (x % pl != 0)
                throw LiftObstruction("residual not divisible by p^" + std::to_string(level) + " at X^" +
                                      std::to_string(e) + " T^" + std::to_string(t));
            const long r = static_cast<long>((x / pl) % p);
            if (r != 0) b[{e, t}] = (p - r) % p;
        }
    }
    return b;
}

std::pair<int, int> t_range(const std::vector<const SparseVec*>& vs, int margin, int p) {
    int lo = 0, hi = 0;
    bool any = false;
    for (const auto* v : vs)
        for (const auto& [k, x] : *v) {
            if (!any) lo = hi = k.second;
            lo = std::min(lo, k.second);
            hi = std::max(hi, k.second);
            any = true;
        }
    if (!any) return {-p, p};
    return {lo - margin, hi + margin};
}

std::vector<Unknown> unknowns_for_level(int p, int level, int i_lo, int i_hi, std::pair<int, int> tr) {
    std::vector<Unknown> u;
    for (int i = i_lo; i <= i_hi; ++i) {
        if (i < 0 && condition3_bound(p, i) > level) continue;
        for (int t = tr.first; t <= tr.second; ++t) u.push_back({'g', i, t});
    }
    for (int i = 1; i <= i_hi; ++i)
        for (int t = static_cast<int>(floor_div(tr.first, p)); t <= ceil_div(tr.second, p); ++t)
            u.push_back({'R', i, t});
    std::sort(u.begin(), u.end());
    return u;
}

void apply_correction(GRPair& pair, const std::vector<Unknown>& unk, const std::map<int, long>& x, int level) {
    const int p = pair.p, N = pair.g.prec();
    Laurent::Coeff pl = 1;
    for (int k = 0; k < level; ++k) pl *= p;
    for (const auto& [j, v] : x) {
        if (v == 0) continue;
        const Unknown& u = unk[j];
        const Laurent delta = Laurent::monomial(p, N, u.texp, static_cast<Laurent::Coeff>(v) * pl);
        if (u.kind == 'g') pair.g.set(u.index, pair.g.coeff(u.index) + delta);
        else pair.R.set(u.index, pair.R.coeff(u.index) + delta);
    }
}

std::map<int, long> combine(const std::map<int, long>& a, const std::map<int, long>& b, long s, int p) {
    std::map<int, long> r = a;
    for (const auto& [j, v] : b) {
        long& x = r[j];
        x = ((x + s * v) % p + p) % p;
        if (x == 0) r.erase(j);
    }
    return r;
}

std::string rows_string(const std::vector<RowKey>& rows, int p) {
    std::ostringstream os;
    for (std::size_t k = 0; k < rows.size() && k < 8; ++k) {
        if (k) os << ", ";
        os << "index " << floor_div(rows[k].first - 1, p - 1) << " (X^" << rows[k].first << ") T^"
           << rows[k].second;
    }
    if (rows.size() > 8) os << ", ...";
    return os.str();
}

}  // namespace

LinearColumn linear_column(const GroupLaw& law, char kind, int index, int texp, long emax) {
    LinearModel model(law, emax, std::min(0L, static_cast<long>(index) * (law.p - 1) + 1));
    Unknown u{kind, index, texp};
    return {kind, index, texp, model.image(u)};
}

namespace {

GRPair identity_pair(int p, int N, int i_lo, int i_hi) {
    GRPair pair;
    pair.p = p;
    pair.prec = 1;
    pair.i_lo = i_lo;
    pair.i_hi = i_hi;
    pair.g = XSeries(p, N, XKind::two_sided);
    pair.g.set(0, Laurent::constant(p, N, 1));
    pair.R = XSeries(p, N, XKind::nonneg);
    pair.R.set(0, Laurent::monomial(p, N, 1, 1));
    return pair;
}

}  // namespace

int solver_group_degree(int p, int prec, int i_lo, int i_hi, const SolveOptions& opts) {
    const int Nint = opts.lookahead ? prec + 1 : prec;
    const long emax = static_cast<long>(i_hi) * (p - 1) + 1;
    const long e_lo = static_cast<long>(std::min(i_lo, 0)) * (p - 1) + 1;
    // residuals are evaluated up to precision Nint + 1 (verification included)
    const GRPair id = identity_pair(p, Nint + 1, i_lo, i_hi);
    const int lin = group_degree_for_cap(cap_for_exponent(emax, p - 1, 1) + std::max(0L, 1 - e_lo));
    return std::max(required_group_degree(id, Nint + 1), lin);
}

GRPair solve_gr(int p, int prec, int i_lo, int i_hi, const GroupLaw& law, const SolveOptions& opts) {
    require_prime(p);
    if (prec < 1) throw InvalidArgument("prec must be >= 1");
    if (i_lo > 0 || i_hi < 0) throw WindowTooSmall("window must contain index 0");
    if (law.p != p) throw InvalidArgument("group law over a different prime");
    const int Nint = opts.lookahead ? prec + 1 : prec;
    const int margin = opts.t_margin >= 0 ? opts.t_margin : 2 * p;
    const long emax = static_cast<long>(i_hi) * (p - 1) + 1;

    const int need_deg = solver_group_degree(p, prec, i_lo, i_hi, opts);
    if (law.maxdeg < need_deg)
        throw WindowTooSmall("group law degree " + std::to_string(law.maxdeg) + " < required " +
                             std::to_string(need_deg));
    if (law.prec < Nint + 1)
        throw PrecisionExhausted("group law precision " + std::to_string(law.prec) + " < " +
                                 std::to_string(Nint + 1));
    GRPair pair = identity_pair(p, Nint, i_lo, i_hi);

    LinearModel model(law, emax, static_cast<long>(i_lo) * (p - 1) + 1);

    for (int level = 1; level < prec; ++level) {
        const Series phi = gr_residual(pair, law, level + 1);
        if (!phi.is_exact() && phi.known_hi() < emax) throw WindowTooSmall("residual window too small");
        const SparseVec b = level_target(phi, level, emax);
        const auto tr = t_range({&b}, margin, p);
        const std::vector<Unknown> unk = unknowns_for_level(p, level, i_lo, i_hi, tr);
        std::vector<SparseVec> cols;
        cols.reserve(unk.size());
        for (const auto& u : unk) cols.push_back(model.column(u));
        const Solution sol = solve_modp(p, cols, b);
        if (!sol.consistent)
            throw LiftObstruction("level " + std::to_string(level) + " system inconsistent at " +
                                  rows_string(sol.bad_rows, p) + "; enlarge the window");
        std::map<int, long> x = sol.values;

        if (opts.lookahead) {
            GRPair trial = pair;
            apply_correction(trial, unk, x, level);
            const Series phi1 = gr_residual(trial, law, level + 2);
            const SparseVec b1 = level_target(phi1, level + 1, emax);
            const auto tr1 = t_range({&b, &b1}, margin, p);
            const std::vector<Unknown> unk1 = unknowns_for_level(p, level + 1, i_lo, i_hi, tr1);
            std::vector<SparseVec> cols1;
            for (const auto& u : unk1) cols1.push_back(model.column(u));
            if (!solve_modp(p, cols1, b1).consistent) {
                // next-level target as an affine function of the free values
                std::vector<SparseVec> jac;
                for (int f : sol.free_cols) {
                    GRPair t2 = pair;
                    apply_correction(t2, unk, combine(x, sol.null_vectors.at(f), 1, p), level);
                    const SparseVec bf = level_target(gr_residual(t2, law, level + 2), level + 1, emax);
                    SparseVec d = bf;
                    for (const auto& [k, v] : b1) {
                        long& y = d[k];
                        y = ((y - v) % p + p) % p;
                        if (y == 0) d.erase(k);
                    }
                    // unknown z_f enters the next system as -J_f z_f
                    for (auto& [k, v] : d) v = (p - v) % p;
                    jac.push_back(std::move(d));
                }
                std::vector<SparseVec> all = cols1;
                all.insert(all.end(), jac.begin(), jac.end());
                const Solution s2 = solve_modp(p, all, b1);
                if (s2.consistent) {
                    for (std::size_t k = 0; k < sol.free_cols.size(); ++k) {
                        auto it = s2.values.find(static_cast<int>(cols1.size() + k));
                        if (it == s2.values.end()) continue;
                        x = combine(x, sol.null_vectors.at(sol.free_cols[k]), it->second, p);
                    }
                }
            }
        }
        apply_correction(pair, unk, x, level);
        pair.prec = level + 1;
    }

    GRPair out = pair;
    out.prec = prec;
    out.g = pair.g.with_prec(prec);
    out.R = pair.R.with_prec(prec);
    const ResidualReport rep = verify_gr(out, law);
    if (rep.residual_valuation < prec || !rep.cond1 || !rep.cond2 || !rep.cond3)
        throw LiftObstruction("lifted pair fails verification (residual valuation " +
                              std::to_string(rep.residual_valuation) + " at index " +
                              (rep.worst_index ? std::to_string(*rep.worst_index) : std::string("-")) + ")");
    return out;
}

// ---------------------------------------------------------------------------

std::optional<Rational> g_bound(int p, int n, int i) {
    if (n <= 1) return std::nullopt;
    std::optional<Rational> best;
    long pj = 1;
    Rational partial(0);
    for (int j = 1; j <= n - 1; ++j) {
        pj *= p;
        partial += Rational(1, pj);
        const Rational term = Rational(-j) - Rational(i, pj) + partial;
        if (!best || term > *best) best = term;
    }
    return Rational(n) + *best;
}

const char* to_string(EquivVerdict v) {
    switch (v) {
        case EquivVerdict::strict: return "strict";
        case EquivVerdict::non_strict: return "non_strict";
        case EquivVerdict::fail: return "fail";
    }
    return "fail";
}

namespace {

// v(a - b) on representatives; kInfVal when identical at equal precision.
std::pair<long, int> coeff_difference(const Laurent& a, const Laurent& b) {
    const int P = std::min(a.prec(), b.prec());
    const Laurent d = a.with_prec(P) - b.with_prec(P);
    if (!d.is_zero()) return {d.valuation(), P};
    if (a.prec() == b.prec()) return {kInfVal, P};
    return {P, P};  // zero at precision P only
}

}  // namespace

EquivReport approx_equiv_check(const GRPair& ref, const GRPair& cand, int n) {
    if (ref.p != cand.p) throw InvalidArgument("pairs over different primes");
    if (n < 1) throw InvalidArgument("n must be >= 1");
    const int p = ref.p;
    EquivReport rep;
    bool strict = true, weak = true;
    auto judge = [&](char kind, int i, const Laurent& a, const Laurent& b, std::optional<Rational> bound,
                     bool beyond_window) {
        EquivIndexReport ir{kind, i, bound.value_or(Rational(0)), kInfVal, false};
        if (!bound) {
            rep.indices.push_back(ir);
            return;
        }
        if (beyond_window) {
            ir.vacuous = true;
            rep.indices.push_back(ir);
            return;
        }
        const bool a0 = a.is_zero(), b0 = b.is_zero();
        auto [v, P] = a0 && b0 ? std::pair<long, int>{kInfVal, 0} : coeff_difference(a, b);
        ir.valuation = v;
        if (v < kInfVal && v >= P && !(Rational(P) > *bound))
            throw IncomparablePrecision("index " + std::to_string(i) + " (" + kind +
                                        "): coefficients agree to p^" + std::to_string(P) +
                                        " but the bound needs more");
        if (v < kInfVal) {
            if (!(Rational(v) > *bound)) strict = false;
            if (Rational(v) < *bound) weak = false;
        }
        rep.indices.push_back(ir);
    };
    std::set<int> gi, ri;
    for (const auto& [i, c] : ref.g.entries()) gi.insert(i);
    for (const auto& [i, c] : cand.g.entries()) gi.insert(i);
    for (const auto& [i, c] : ref.R.entries()) ri.insert(i);
    for (const auto& [i, c] : cand.R.entries()) ri.insert(i);
    auto beyond = [](const XSeries& s, int i) { return s.truncation() && i > *s.truncation(); };
    for (int i : gi)
        judge('g', i, ref.g.coeff(i), cand.g.coeff(i), g_bound(p, n, i),
              beyond(ref.g, i) || beyond(cand.g, i));
    for (int i : ri)
        judge('R', i, ref.R.coeff(i), cand.R.coeff(i), Rational(n - i), beyond(ref.R, i) || beyond(cand.R, i));
    rep.verdict = strict ? EquivVerdict::strict : (weak ? EquivVerdict::non_strict : EquivVerdict::fail);
    return rep;
}

ResidualReport verify_gr(const GRPair& pair) {
    const int N = pair.prec + 1;
    return verify_gr(pair, build_group_law(pair.p, required_group_degree(pair, N), N + 1));
}

GRPair solve_gr(int p, int prec, int i_lo, int i_hi, const SolveOptions& opts) {
    require_prime(p);
    if (prec < 1) throw InvalidArgument("prec must be >= 1");
    const int Nint = opts.lookahead ? prec + 1 : prec;
    const GroupLaw law = build_group_law(p, solver_group_degree(p, prec, i_lo, i_hi, opts), Nint + 2);
    return solve_gr(p, prec, i_lo, i_hi, law, opts);
}

}  // namespace ramfield
