#pragma once

#include <ramfield/galois.hpp>
#include <ramfield/gr_solver.hpp>
#include <ramfield/k2top.hpp>
#include <ramfield/padic.hpp>
#include <ramfield/residue.hpp>
#include <ramfield/series.hpp>
#include <ramfield/tower.hpp>
#include <ramfield/tower_builder.hpp>

#include <boost/rational.hpp>
#include <nlohmann/json.hpp>

namespace ramfield {

using Json = nlohmann::json;

std::string rational_string(const boost::rational<long>& r);

Json to_json(const PadicScalar& x);
PadicScalar padic_from_json(const Json& j);

// {"p","prec","kind","i_hi","terms":[{"i","t_exp","val","unit"}]}, terms
// sorted by (i, t_exp); residue = unit * p^val.
Json to_json(const XSeries& s);
XSeries xseries_from_json(const Json& j);

Json to_json(const GRPair& pair);  // schema gr/1
GRPair gr_pair_from_json(const Json& j);
Json to_json(const ResidualReport& r);
Json to_json(const EquivReport& r);

Json to_json(const Tower& T, const TowerElement& x);
Json to_json(const BuiltTower& bt);  // schema tower/1
Json to_json(const AutomorphismTable& tab, const Tower& T);
Json to_json(const TowerEquality& eq, const Tower& T);
Json to_json(const ContainedZero& cz, const Tower& T);

Json to_json(const BasisCatalog& cat);  // schema catalog/1
Json to_json(const K2Element& x);       // schema k2/1

}  // namespace ramfield
