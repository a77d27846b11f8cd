#include <ramfield/errors.hpp>
#include <ramfield/galois.hpp>
#include <ramfield/gr_solver.hpp>
#include <ramfield/k2top.hpp>
#include <ramfield/residue.hpp>
#include <ramfield/roots.hpp>
#include <ramfield/serialize.hpp>
#include <ramfield/series.hpp>
#include <ramfield/tower_builder.hpp>

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>

using namespace ramfield;

namespace {

// Process status per error class.
constexpr int kOk = 0;
constexpr int kVerification = 2;
constexpr int kPrecision = 3;
constexpr int kInvalid = 4;

int exit_code(ErrorKind k) {
    switch (k) {
        case ErrorKind::verification: return kVerification;
        case ErrorKind::precision: return kPrecision;
        case ErrorKind::invalid_input: return kInvalid;
    }
    return kInvalid;
}

long default_prec(long fallback) {
    if (const char* s = std::getenv("RF_DEFAULT_PREC")) {
        try {
            const long v = std::stol(s);
            if (v >= 1) return v;
        } catch (const std::exception&) {
        }
        std::cerr << "ignoring RF_DEFAULT_PREC='" << s << "'\n";
    }
    return fallback;
}

std::pair<int, int> parse_window(const std::string& w) {
    const auto colon = w.find(':');
    if (colon == std::string::npos) throw InvalidArgument("window must be lo:hi, got '" + w + "'");
    try {
        return {std::stoi(w.substr(0, colon)), std::stoi(w.substr(colon + 1))};
    } catch (const std::exception&) {
        throw InvalidArgument("window must be lo:hi, got '" + w + "'");
    }
}

Json read_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InvalidArgument("cannot open " + path);
    try {
        return Json::parse(in);
    } catch (const Json::exception& e) {
        throw InvalidArgument(path + ": " + e.what());
    }
}

struct Output {
    std::string path;
    Json config;

    int emit(Json result, int status, const std::string& summary) const {
        Json doc{{"config", config}, {"result", std::move(result)}, {"status", status}};
        write(doc);
        std::cerr << summary << "\n";
        return status;
    }
    int fail(const Error& e) const {
        Json doc{{"config", config}, {"error", {{"type", e.name()}, {"message", e.what()}}}};
        const int status = exit_code(e.kind());
        doc["status"] = status;
        write(doc);
        std::cerr << e.name() << ": " << e.what() << "\n";
        return status;
    }
    void write(const Json& doc) const {
        const std::string text = doc.dump(2) + "\n";
        if (path.empty() || path == "-") {
            std::cout << text;
        } else {
            std::ofstream out(path);
            if (!out) throw InvalidArgument("cannot write " + path);
            out << text;
        }
    }
};

// ---- tower options ------------------------------------------------------

struct TowerOpts {
    std::string source = "builtin-p2";
    std::string d = "1";
    std::string convention = "direct";
    std::string pair_file;
};

struct SharedOpts {
    int p = 5;
    int n = 2;
    long prec = 12;
    int solve_prec = 2;
    std::string window = "-3:2";
    bool lookahead = false;
    std::string out;
    std::uint64_t seed = 1;
};

void add_tower_opts(CLI::App* sub, TowerOpts& t, const std::string& prefix) {
    sub->add_option("--" + prefix + "source", t.source, "solved-gr | builtin-p2 | explicit-p2")
        ->check(CLI::IsMember({"solved-gr", "builtin-p2", "explicit-p2"}))
        ->capture_default_str();
    sub->add_option("--" + prefix + "d", t.d, "unit d (decimal integer)")->capture_default_str();
    sub->add_option("--" + prefix + "convention", t.convention, "direct | inverse")
        ->check(CLI::IsMember({"direct", "inverse"}))
        ->capture_default_str();
    sub->add_option("--" + prefix + "pair", t.pair_file, "gr/1 JSON file used as the (g, R) pair");
}

void add_shared(CLI::App* sub, SharedOpts& s, bool tower) {
    sub->add_option("--p", s.p, "prime > 3")->capture_default_str();
    sub->add_option("--prec", s.prec, "working precision (default RF_DEFAULT_PREC)")->capture_default_str();
    sub->add_option("--out", s.out, "output path (default stdout)");
    sub->add_option("--seed", s.seed, "seed for randomized checks")->capture_default_str();
    if (!tower) return;
    sub->add_option("--n", s.n, "tower height")->capture_default_str();
    sub->add_option("--solve-prec", s.solve_prec, "precision of the solved pair (solved-gr)")->capture_default_str();
    sub->add_option("--window", s.window, "index window lo:hi of the solved pair")->capture_default_str();
    sub->add_flag("--lookahead", s.lookahead, "solver lookahead (needed beyond precision 2)");
}

Json shared_config(const SharedOpts& s, bool tower) {
    Json c{{"p", s.p}, {"prec", s.prec}, {"seed", s.seed}};
    if (tower) {
        c["n"] = s.n;
        c["solve_prec"] = s.solve_prec;
        c["window"] = s.window;
        c["lookahead"] = s.lookahead;
    }
    return c;
}

Json tower_config(const TowerOpts& t) {
    return {{"source", t.source}, {"d", t.d}, {"eval_convention", t.convention}, {"pair", t.pair_file}};
}

TowerSpec make_spec(const SharedOpts& s, const TowerOpts& t) {
    require_prime(s.p);
    if (s.prec < 1) throw InvalidArgument("precision must be >= 1");
    TowerSpec spec;
    spec.p = s.p;
    spec.n = s.n;
    spec.d = int_from_string(t.d);
    spec.prec = s.prec;
    spec.source = tower_source_from_string(t.source);
    spec.convention = eval_convention_from_string(t.convention);
    if (!t.pair_file.empty()) {
        const Json doc = read_json(t.pair_file);
        spec.pair = gr_pair_from_json(doc.contains("result") ? doc.at("result").at("pair") : doc);
    } else if (spec.source == TowerSource::solved_gr) {
        const auto [lo, hi] = parse_window(s.window);
        SolveOptions o;
        o.lookahead = s.lookahead;
        spec.pair = solve_gr(s.p, s.solve_prec, lo, hi, o);
    }
    return spec;
}

TowerPoly level_relation(const Tower& T, int j) {
    TowerPoly f(static_cast<std::size_t>(T.p() + 1), T.zero(0));
    f[0] = T.neg(T.c(j));
    f[1] = T.from_int(-1, 0);
    f[static_cast<std::size_t>(T.p())] = T.one(0);
    return f;
}

std::string certificate_line(const BuiltTower& bt) {
    std::ostringstream s;
    s << "tower p=" << bt.spec.p << " n=" << bt.spec.n << " source=" << to_string(bt.spec.source);
    for (const auto& c : bt.levels)
        s << "  v(b" << c.level << ")=" << rational_string(c.beta_valuation) << (c.valuation_ok ? "" : " (MISMATCH)");
    return s.str();
}

// ---- selftest -------------------------------------------------------------

Json selftest(std::uint64_t seed, bool& ok) {
    Json checks = Json::array();
    auto record = [&](const std::string& name, bool pass, Json detail) {
        ok = ok && pass;
        checks.push_back({{"name", name}, {"pass", pass}, {"detail", std::move(detail)}});
    };
    {
        const ResidualReport r = verify_gr(builtin_gr_p2(5));
        record("builtin_pair_p5", r.cond1 && r.cond2 && r.cond3 && r.residual_valuation >= 2, to_json(r));
    }
    for (int d : {1, 2, 7}) {
        TowerSpec s;
        s.d = d;
        s.prec = 8;
        s.source = TowerSource::explicit_p2;
        const BuiltTower bt = build_tower(s);
        bool pass = true;
        for (const auto& c : bt.levels) pass = pass && c.valuation_ok;
        record("tower_valuations_d" + std::to_string(d), pass, certificate_line(bt));
    }
    {
        std::mt19937_64 rng(seed);
        const int p = 5, prec = 10;
        bool pass = true;
        for (int trial = 0; trial < 10 && pass; ++trial) {
            XSeries R(p, prec, XKind::nonneg);
            R.set(0, Laurent::monomial(p, prec, 1, 1 + static_cast<Laurent::Coeff>(rng() % 4)));
            for (int i = 1; i <= 6; ++i)
                if (rng() % 2)
                    R.set(i, Laurent::monomial(p, prec, static_cast<int>(rng() % 5) - 2,
                                               static_cast<Laurent::Coeff>(rng() % 1000)));
            const XSeries S = xseries_reversion(R, 6);
            XSeries id(p, prec, XKind::nonneg);
            id.set(0, Laurent::constant(p, prec, 1));
            const XSeries RS = xseries_compose(R, S), SR = xseries_compose(S, R);
            for (int i = 0; i <= 6; ++i) pass = pass && RS.coeff(i) == id.coeff(i) && SR.coeff(i) == id.coeff(i);
        }
        record("reversion_round_trip", pass, {{"trials", 10}, {"seed", seed}});
    }
    {
        const auto k = ResidueField::rational_function(5, 1);
        const bool pass = !embeddable(k, k.t_power(1), 2) && embeddable(k, k.t_power(5), 2) &&
                          !embeddable(k, k.t_power(5), 3);
        record("embedding_criterion", pass, Json::object());
    }
    {
        bool pass = true;
        for (long j = -125; j <= 125; ++j) {
            if (j == 0) continue;
            const Int ord = *generator_order(5, j);
            const K2Element g = k2_generator(5, j, 10);
            pass = pass && k2_is_zero(k2_scalar_mul(ord, g)) && !k2_is_zero(k2_scalar_mul(ord / 5, g));
        }
        record("k2_generator_orders", pass, Json::object());
    }
    return checks;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Explicit cyclic extensions of p-adic fields: pairs (g, R), towers, residue catalogs, K2"};
    app.require_subcommand(1);
    app.set_help_all_flag("--help-all");

    SharedOpts sh;
    sh.prec = default_prec(12);
    TowerOpts tw, left, right;
    std::string window = "-3:2";
    int t_margin = -1;
    std::string pair_file;
    bool builtin = false;
    bool automorphisms = true;
    bool images = false;
    std::string field = "rational";
    int m = 1;
    int bound = 3;
    long j = 1;
    std::vector<std::string> terms;
    std::string scale = "1";

    SharedOpts solve_sh = sh;
    solve_sh.prec = default_prec(2);
    auto* solve = app.add_subcommand("solve-gr", "lift a pair (g, R) to the requested precision");
    add_shared(solve, solve_sh, false);
    solve->add_option("--window", window, "index window lo:hi")->capture_default_str();
    solve->add_flag("--lookahead", solve_sh.lookahead, "keep the next level solvable (prec >= 3)");
    solve->add_option("--t-margin", t_margin, "extra T-degrees searched per side (default 2p)");

    auto* verify = app.add_subcommand("verify-gr", "check conditions (1)-(3) and the functional equation");
    add_shared(verify, sh, false);
    verify->add_option("--pair", pair_file, "gr/1 JSON file (or a solve-gr report)");
    verify->add_flag("--builtin", builtin, "use the explicit degree-p^2 pair");

    auto* build = app.add_subcommand("build-tower", "build K(b_1..b_n) and certify valuations");
    add_shared(build, sh, true);
    add_tower_opts(build, tw, "");

    auto* vt = app.add_subcommand("verify-tower", "roots, contained zero, automorphisms and cyclicity");
    add_shared(vt, sh, true);
    add_tower_opts(vt, tw, "");
    vt->add_flag("!--no-automorphisms", automorphisms, "skip the automorphism table");
    vt->add_flag("--images", images, "include generator images in the automorphism table");

    auto* te = app.add_subcommand("towers-equal", "decide K(b~) = K(b) by root matching");
    add_shared(te, sh, true);
    add_tower_opts(te, left, "left-");
    add_tower_opts(te, right, "right-");

    auto* cat = app.add_subcommand("catalog", "generator catalog over a residue field");
    add_shared(cat, sh, false);
    cat->add_option("--field", field, "prime | finite | rational")
        ->check(CLI::IsMember({"prime", "finite", "rational"}))
        ->capture_default_str();
    cat->add_option("--m", m, "degree of the constant field over F_p")->capture_default_str();
    cat->add_option("--n", sh.n, "exponent level")->capture_default_str();
    cat->add_option("--bound", bound, "max t-degree enumerated")->capture_default_str();

    auto* k2 = app.add_subcommand("k2", "the group U1 K2top(Q_p{{t}})");
    k2->require_subcommand(1);
    auto* k2o = k2->add_subcommand("order", "order of {1 - p t^j, t}");
    add_shared(k2o, sh, false);
    k2o->add_option("--j", j, "generator index")->required();
    auto* k2n = k2->add_subcommand("normal-form", "normal form of sum c {1 - p t^j, t}");
    add_shared(k2n, sh, false);
    k2n->add_option("--term", terms, "j:c pairs")->required();
    k2n->add_option("--scale", scale, "multiply the result by this integer")->capture_default_str();

    auto* st = app.add_subcommand("selftest", "quick property suite");
    add_shared(st, sh, false);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? kOk : kInvalid;
    }

    Output out;
    try {
        if (*solve) {
            out.path = solve_sh.out;
            out.config = shared_config(solve_sh, false);
            out.config.update({{"command", "solve-gr"}, {"window", window}, {"lookahead", solve_sh.lookahead},
                               {"t_margin", t_margin}});
            const auto [lo, hi] = parse_window(window);
            SolveOptions o;
            o.lookahead = solve_sh.lookahead;
            o.t_margin = t_margin;
            const GRPair pair = solve_gr(solve_sh.p, static_cast<int>(solve_sh.prec), lo, hi, o);
            const ResidualReport r = verify_gr(pair);
            const bool good = r.cond1 && r.cond2 && r.cond3 && r.residual_valuation >= pair.prec;
            return out.emit({{"pair", to_json(pair)}, {"report", to_json(r)}}, good ? kOk : kVerification,
                            "solve-gr: residual valuation " + std::to_string(r.residual_valuation) + " (target " +
                                std::to_string(pair.prec) + ")");
        }
        if (*verify) {
            out.path = sh.out;
            out.config = shared_config(sh, false);
            out.config.update({{"command", "verify-gr"}, {"pair", pair_file}, {"builtin", builtin}});
            if (builtin == !pair_file.empty()) throw InvalidArgument("give exactly one of --pair and --builtin");
            GRPair pair;
            if (builtin) {
                require_prime(sh.p);
                pair = builtin_gr_p2(sh.p);
            } else {
                const Json doc = read_json(pair_file);
                pair = gr_pair_from_json(doc.contains("result") ? doc.at("result").at("pair") : doc);
            }
            const ResidualReport r = verify_gr(pair);
            const bool good = r.cond1 && r.cond2 && r.cond3 && r.residual_valuation >= pair.prec;
            return out.emit(to_json(r), good ? kOk : kVerification,
                            "verify-gr: residual valuation " + std::to_string(r.residual_valuation) +
                                ", conditions " + (r.cond1 ? "1" : "-") + (r.cond2 ? "2" : "-") +
                                (r.cond3 ? "3" : "-"));
        }
        if (*build || *vt) {
            out.path = sh.out;
            out.config = shared_config(sh, true);
            out.config.update(tower_config(tw));
            out.config["command"] = *build ? "build-tower" : "verify-tower";
            const BuiltTower bt = build_tower(make_spec(sh, tw));
            bool good = true;
            for (const auto& c : bt.levels) good = good && c.valuation_ok;
            Json result{{"tower", to_json(bt)}};
            std::string summary = certificate_line(bt);
            if (*vt) {
                const Tower& T = bt.tower;
                Json levels = Json::array();
                for (int l = 1; l <= T.levels(); ++l) {
                    const auto roots = find_roots(T, level_relation(T, l), l);
                    good = good && static_cast<int>(roots.size()) == T.p();
                    levels.push_back({{"level", l}, {"roots_of_relation", roots.size()}});
                }
                result["level_roots"] = levels;
                Json cz = Json::array();
                bool any = false;
                for (auto cv : {EvalConvention::direct, EvalConvention::inverse}) {
                    const ContainedZero z = contained_zero(bt, cv);
                    any = any || z.found();
                    cz.push_back(to_json(z, T));
                    summary += std::string("  zero[") + to_string(cv) + "]=" + (z.found() ? "yes" : "no");
                }
                good = good && any;
                result["contained_zero"] = cz;
                if (automorphisms) {
                    const AutomorphismTable tab = automorphism_table(T);
                    Json tj = to_json(tab, T);
                    if (!images) tj.erase("images");
                    result["automorphisms"] = tj;
                    good = good && tab.cyclic;
                    summary += "  |Aut|=" + std::to_string(tab.images.size()) + (tab.cyclic ? " cyclic" : " not cyclic");
                }
            }
            return out.emit(result, good ? kOk : kVerification, summary);
        }
        if (*te) {
            out.path = sh.out;
            out.config = shared_config(sh, true);
            out.config.update({{"command", "towers-equal"}, {"left", tower_config(left)}, {"right", tower_config(right)}});
            const BuiltTower a = build_tower(make_spec(sh, left));
            const BuiltTower b = build_tower(make_spec(sh, right));
            const TowerEquality eq = towers_equal(a.tower, b.tower, sh.n);
            std::string summary = std::string("towers-equal: ") + (eq.equal ? "equal" : "not certified equal");
            for (const auto& w : eq.witness)
                summary += "  v" + std::to_string(w.level) + "=" + (w.infinite ? "inf" : rational_string(w.valuation));
            return out.emit({{"left", to_json(a)}, {"right", to_json(b)}, {"equality", to_json(eq, a.tower)}},
                            eq.equal ? kOk : kVerification, summary);
        }
        if (*cat) {
            out.path = sh.out;
            out.config = shared_config(sh, false);
            out.config.update({{"command", "catalog"}, {"field", field}, {"m", m}, {"n", sh.n}, {"bound", bound}});
            out.config.erase("prec");
            const ResidueField k = field == "prime"    ? ResidueField::prime(sh.p)
                                   : field == "finite" ? ResidueField::finite(sh.p, m)
                                                       : ResidueField::rational_function(sh.p, m);
            const BasisCatalog c = generator_catalog(k, sh.n, bound);
            return out.emit(to_json(c), kOk, "catalog: " + std::to_string(c.entries.size()) + " entries");
        }
        if (*k2o) {
            out.path = sh.out;
            out.config = {{"command", "k2 order"}, {"p", sh.p}, {"j", j}};
            const auto ord = generator_order(sh.p, j);
            const std::string s = ord ? to_string(*ord) : "inf";
            return out.emit({{"j", j}, {"order", s}}, kOk, "order of generator " + std::to_string(j) + ": " + s);
        }
        if (*k2n) {
            out.path = sh.out;
            out.config = {{"command", "k2 normal-form"}, {"p", sh.p}, {"prec", sh.prec}, {"terms", terms},
                          {"scale", scale}};
            std::vector<std::pair<long, Int>> raw;
            for (const auto& t : terms) {
                const auto colon = t.find(':');
                if (colon == std::string::npos) throw InvalidArgument("term must be j:c, got '" + t + "'");
                try {
                    raw.emplace_back(std::stol(t.substr(0, colon)), int_from_string(t.substr(colon + 1)));
                } catch (const std::logic_error&) {
                    throw InvalidArgument("term must be j:c, got '" + t + "'");
                }
            }
            const K2Element x = k2_scalar_mul(int_from_string(scale), k2_normal_form(sh.p, sh.prec, raw));
            return out.emit(to_json(x), kOk,
                            std::string("k2 normal form: ") + (k2_is_zero(x) ? "0" : "nonzero") + ", " +
                                std::to_string(x.torsion.size()) + " torsion coordinates");
        }
        if (*st) {
            out.path = sh.out;
            out.config = {{"command", "selftest"}, {"seed", sh.seed}};
            bool ok = true;
            Json checks = selftest(sh.seed, ok);
            return out.emit(checks, ok ? kOk : kVerification, std::string("selftest: ") + (ok ? "all pass" : "FAILED"));
        }
    } catch (const Error& e) {
        return out.fail(e);
    } catch (const std::exception& e) {
        // malformed JSON input and the like
        return out.fail(InvalidArgument(e.what()));
    }
    return kInvalid;
}
