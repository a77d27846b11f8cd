#include <ramfield/errors.hpp>
#include <ramfield/serialize.hpp>

namespace ramfield {

namespace {

Json val_json(long v, long e) {
    if (v >= kInfVal) return "inf";
    return rational_string(boost::rational<long>(v, e));
}

Json int_vector(const std::vector<Int>& v) {
    Json a = Json::array();
    for (const auto& x : v) a.push_back(to_string(x));
    return a;
}

Int json_int(const Json& j) {
    if (j.is_number_integer()) return Int(j.get<long>());
    return int_from_string(j.get<std::string>());
}

}  // namespace

std::string rational_string(const boost::rational<long>& r) {
    if (r.denominator() == 1) return std::to_string(r.numerator());
    return std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

Json to_json(const PadicScalar& x) {
    Json j{{"p", x.p()}};
    if (x.is_zero()) {
        j["zero"] = true;
        j["absprec"] = x.is_exact_zero() ? Json(nullptr) : Json(x.absprec());
        return j;
    }
    j["val"] = x.val();
    j["unit"] = to_string(x.unit());
    j["prec"] = x.prec();
    return j;
}

PadicScalar padic_from_json(const Json& j) {
    const int p = j.at("p").get<int>();
    if (j.value("zero", false)) {
        const Json& a = j.at("absprec");
        return PadicScalar::zero(p, a.is_null() ? kInfVal : a.get<long>());
    }
    return PadicScalar::from_parts(p, j.at("val").get<long>(), json_int(j.at("unit")), j.at("prec").get<long>());
}

Json to_json(const XSeries& s) {
    Json terms = Json::array();
    for (const auto& [i, c] : s.entries())
        for (const auto& [t, r] : c.terms()) {
            const long v = vp(r, s.p());
            Int u = Int(r);
            for (long k = 0; k < v; ++k) u /= s.p();
            terms.push_back({{"i", i}, {"t_exp", t}, {"val", v}, {"unit", to_string(u)}});
        }
    Json j{{"p", s.p()},
           {"prec", s.prec()},
           {"kind", s.kind() == XKind::nonneg ? "nonneg" : "two_sided"},
           {"terms", terms}};
    j["i_hi"] = s.truncation() ? Json(*s.truncation()) : Json(nullptr);
    return j;
}

XSeries xseries_from_json(const Json& j) {
    const int p = j.at("p").get<int>();
    const int prec = j.at("prec").get<int>();
    XSeries s(p, prec, j.at("kind").get<std::string>() == "nonneg" ? XKind::nonneg : XKind::two_sided);
    std::map<int, std::map<int, Int>> acc;
    for (const auto& t : j.at("terms")) {
        const Int r = json_int(t.at("unit")) * pow_p(p, t.at("val").get<long>());
        acc[t.at("i").get<int>()][t.at("t_exp").get<int>()] = r;
    }
    for (const auto& [i, m] : acc) s.set(i, Laurent::from_residues(p, prec, m));
    if (j.contains("i_hi") && !j.at("i_hi").is_null()) s.set_truncation(j.at("i_hi").get<int>());
    return s;
}

Json to_json(const GRPair& pair) {
    return {{"schema", "gr/1"},
            {"p", pair.p},
            {"prec", pair.prec},
            {"window", {pair.i_lo, pair.i_hi}},
            {"g", to_json(pair.g)},
            {"R", to_json(pair.R)}};
}

GRPair gr_pair_from_json(const Json& j) {
    if (j.value("schema", "") != "gr/1") throw InvalidArgument("expected a gr/1 document");
    GRPair pair;
    pair.p = j.at("p").get<int>();
    pair.prec = j.at("prec").get<int>();
    pair.i_lo = j.at("window").at(0).get<int>();
    pair.i_hi = j.at("window").at(1).get<int>();
    pair.g = xseries_from_json(j.at("g"));
    pair.R = xseries_from_json(j.at("R"));
    if (pair.g.p() != pair.p || pair.R.p() != pair.p) throw InvalidArgument("series over a different prime");
    return pair;
}

Json to_json(const ResidualReport& r) {
    Json j{{"residual_valuation", r.residual_valuation},
           {"vanishes_at_computed_prec", r.vanishes_at_computed_prec},
           {"computed_prec", r.computed_prec},
           {"condition1", r.cond1},
           {"condition2", r.cond2},
           {"condition3", r.cond3},
           {"condition_failures", r.condition_failures},
           {"window_adequate", r.window_adequate},
           {"known_through_exponent", r.known_through_exponent},
           {"lambda", r.lambda},
           {"group_degree", r.group_degree}};
    j["worst_index"] = r.worst_index ? Json(*r.worst_index) : Json(nullptr);
    return j;
}

Json to_json(const EquivReport& r) {
    Json idx = Json::array();
    for (const auto& x : r.indices)
        idx.push_back({{"kind", std::string(1, x.kind)},
                       {"index", x.index},
                       {"bound", rational_string(x.bound)},
                       {"valuation", x.valuation >= kInfVal ? Json("inf") : Json(x.valuation)},
                       {"vacuous", x.vacuous}});
    return {{"verdict", to_string(r.verdict)}, {"indices", idx}};
}

Json to_json(const Tower& T, const TowerElement& x) {
    const TowerValuation v = T.valuation(x);
    Json j{{"level", x.level},
           {"D", x.D},
           {"num", int_vector(x.num)},
           {"text", T.to_string(x)},
           {"valuation", v.exact ? val_json(v.value, T.e()) : Json(nullptr)}};
    j["prec"] = x.is_exact() ? Json(nullptr) : Json(rational_string(boost::rational<long>(x.prec, T.e())));
    return j;
}

Json to_json(const BuiltTower& bt) {
    const Tower& T = bt.tower;
    Json levels = Json::array();
    for (const auto& c : bt.levels)
        levels.push_back({{"level", c.level},
                          {"c", to_json(T, T.c(c.level))},
                          {"v_c", rational_string(c.v_c)},
                          {"beta_valuation", rational_string(c.beta_valuation)},
                          {"expected", rational_string(c.expected)},
                          {"newton_single_segment", c.newton_single_segment},
                          {"valuation_ok", c.valuation_ok}});
    Json spec{{"p", bt.spec.p},
              {"n", bt.spec.n},
              {"d", to_string(bt.spec.d)},
              {"prec", bt.spec.prec},
              {"source", to_string(bt.spec.source)},
              {"eval_convention", to_string(bt.spec.convention)}};
    Json j{{"schema", "tower/1"}, {"spec", spec}, {"e", T.e()}, {"levels", levels}};
    if (bt.spec.pair) j["pair"] = to_json(*bt.spec.pair);
    return j;
}

Json to_json(const AutomorphismTable& tab, const Tower& T) {
    Json images = Json::array();
    for (const auto& s : tab.images) {
        Json im = Json::array();
        for (const auto& x : s) im.push_back(to_json(T, x));
        images.push_back(im);
    }
    return {{"size", tab.images.size()},
            {"cyclic", tab.cyclic},
            {"generator", tab.generator},
            {"generator_order", tab.generator_order},
            {"orders", tab.order},
            {"compose", tab.compose},
            {"match_valuation", val_json(tab.match_valuation, T.e())},
            {"images", images}};
}

Json to_json(const TowerEquality& eq, const Tower& T) {
    Json w = Json::array();
    for (const auto& x : eq.witness)
        w.push_back({{"level", x.level},
                     {"found", x.found},
                     {"valuation", x.infinite ? Json("inf") : Json(rational_string(x.valuation))},
                     {"threshold", rational_string(x.threshold)}});
    Json images = Json::array();
    for (const auto& x : eq.images) images.push_back(to_json(T, x));
    return {{"equal", eq.equal}, {"witness", w}, {"images", images}};
}

Json to_json(const ContainedZero& cz, const Tower& T) {
    Json roots = Json::array();
    for (const auto& r : cz.roots)
        roots.push_back({{"value", to_json(T, r.value)},
                         {"residual", val_json(r.residual, T.e())},
                         {"residual_is_bound", r.residual_is_bound},
                         {"derivative", val_json(r.derivative, T.e())},
                         {"hensel", r.hensel}});
    return {{"eval_convention", to_string(cz.convention)}, {"found", cz.found()}, {"roots", roots}};
}

Json to_json(const BasisCatalog& cat) {
    Json entries = Json::array();
    for (const auto& e : cat.entries)
        entries.push_back({{"i", e.i}, {"d", e.d_text}, {"equation", e.equation}, {"feeds_tower", e.feeds_tower}});
    return {{"schema", "catalog/1"}, {"n", cat.n}, {"bound", cat.bound}, {"entries", entries}};
}

Json to_json(const K2Element& x) {
    Json tors = Json::array();
    for (const auto& [j, c] : x.torsion) tors.push_back({{"j", j}, {"c", to_string(c)}});
    return {{"schema", "k2/1"}, {"p", x.p}, {"prec", x.prec}, {"n0", to_json(x.n0)}, {"torsion", tors}};
}

}  // namespace ramfield
