#pragma once

// JSON encodings. Rationals are strings in lowest terms ("7/5", "2", "-1/3").
// Objects use sorted keys, so dumps are canonical.

#include <string>
#include <vector>

#include <json.hpp>

#include "gdof/cycles.hpp"
#include "gdof/errors.hpp"
#include "gdof/network.hpp"
#include "gdof/polyhedra.hpp"
#include "gdof/polymatroid.hpp"
#include "gdof/power.hpp"
#include "gdof/rational.hpp"

namespace gdof {

using Json = nlohmann::json;

inline Json to_json(const Rational& r) { return to_string(r); }

/// Accepts "p/q" or decimal strings, and JSON integers or decimals.
inline Rational rational_from_json(const Json& j) {
  if (j.is_string()) return parse_rational(j.get<std::string>());
  if (j.is_number_integer()) return parse_rational(j.dump());
  if (j.is_number_float()) return parse_rational(j.dump());
  throw SchemaError("expected a rational (string or number), got " + j.dump());
}

inline Json rationals_to_json(const std::vector<Rational>& v) {
  Json a = Json::array();
  for (const auto& x : v) a.push_back(to_json(x));
  return a;
}

inline std::vector<Rational> rationals_from_json(const Json& j) {
  if (!j.is_array()) throw SchemaError("expected an array of rationals");
  std::vector<Rational> out;
  for (const auto& x : j) out.push_back(rational_from_json(x));
  return out;
}

// ---- network -------------------------------------------------------------

inline Json to_json(const NetworkSpec& net) {
  Json alpha = Json::array();
  for (int i = 0; i < net.K(); ++i) {
    Json row = Json::array();
    for (int j = 0; j < net.K(); ++j) {
      Json users = Json::array();
      for (int l = 0; l < net.L(); ++l) users.push_back(to_json(net(i, j, l)));
      row.push_back(std::move(users));
    }
    alpha.push_back(std::move(row));
  }
  return Json{{"K", net.K()}, {"L", net.L()}, {"alpha", std::move(alpha)}};
}

inline NetworkSpec network_from_json(const Json& j) {
  if (!j.is_object()) throw SchemaError("network must be a JSON object");
  for (const char* key : {"K", "L", "alpha"})
    if (!j.contains(key)) throw SchemaError(std::string("network is missing '") + key + "'");
  if (!j["K"].is_number_integer() || !j["L"].is_number_integer())
    throw SchemaError("K and L must be integers");
  const int K = j["K"].get<int>(), L = j["L"].get<int>();
  if (K < 1 || L < 1) throw SchemaError("K and L must be at least 1");
  const Json& alpha = j["alpha"];
  auto shape_error = [] { return SchemaError("alpha must have shape K x K x L"); };
  if (!alpha.is_array() || static_cast<int>(alpha.size()) != K) throw shape_error();
  std::vector<Rational> flat;
  flat.reserve(static_cast<size_t>(K) * K * L);
  for (const auto& row : alpha) {
    if (!row.is_array() || static_cast<int>(row.size()) != K) throw shape_error();
    for (const auto& users : row) {
      if (!users.is_array() || static_cast<int>(users.size()) != L) throw shape_error();
      for (const auto& x : users) {
        Rational v = rational_from_json(x);
        if (v < 0) throw SchemaError("channel strengths must be nonnegative");
        flat.push_back(std::move(v));
      }
    }
  }
  return NetworkSpec(K, L, std::move(flat));
}

/// Canonical compact serialization, also used to order networks.
inline std::string serialize(const NetworkSpec& net) { return to_json(net).dump(); }

inline Json to_json(const RegimeLabel& label) {
  return Json{{"in_weak", label.in_weak},
              {"in_tin", label.in_tin},
              {"in_ctin", label.in_ctin},
              {"in_sls", label.in_sls},
              {"strongest", std::string(regime_name(label.strongest))}};
}

// ---- cycles ----------------------------------------------------------------

/// [[l, i], ...] with 1-based indices.
inline Json to_json(const Cycle& pi) {
  Json a = Json::array();
  for (const User& u : pi.entries) a.push_back(Json::array({u.l + 1, u.cell + 1}));
  return a;
}

inline Cycle cycle_from_json(const Json& j) {
  if (!j.is_array()) throw SchemaError("cycle must be an array of [l, i] pairs");
  Cycle pi;
  for (const auto& e : j) {
    if (!e.is_array() || e.size() != 2 || !e[0].is_number_integer() || !e[1].is_number_integer())
      throw SchemaError("cycle entries must be [l, i] integer pairs");
    pi.entries.push_back({e[0].get<int>() - 1, e[1].get<int>() - 1});
  }
  return pi;
}

// ---- linear systems ------------------------------------------------------

inline Json to_json(const LinSystem& sys) {
  Json rows = Json::array();
  for (const auto& r : sys.rows) rows.push_back(Json{{"c", rationals_to_json(r.c)}, {"b", to_json(r.b)}});
  Json nonneg = Json::array();
  for (int j = 0; j < sys.dim(); ++j)
    if (sys.nonneg[j]) nonneg.push_back(sys.vars[j]);
  return Json{{"vars", sys.vars}, {"rows", std::move(rows)}, {"nonneg", std::move(nonneg)}};
}

inline LinSystem linsystem_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("vars") || !j.contains("rows"))
    throw SchemaError("linear system must have 'vars' and 'rows'");
  if (!j["vars"].is_array()) throw SchemaError("'vars' must be an array of names");
  LinSystem sys;
  for (const auto& v : j["vars"]) {
    if (!v.is_string()) throw SchemaError("variable names must be strings");
    sys.vars.push_back(v.get<std::string>());
  }
  sys.nonneg.assign(sys.vars.size(), false);
  if (j.contains("nonneg")) {
    if (!j["nonneg"].is_array()) throw SchemaError("'nonneg' must be an array of names");
    for (const auto& v : j["nonneg"]) {
      if (!v.is_string()) throw SchemaError("'nonneg' entries must be strings");
      int idx = sys.index_of(v.get<std::string>());
      if (idx < 0) throw SchemaError("'nonneg' names an unknown variable");
      sys.nonneg[idx] = true;
    }
  }
  if (!j["rows"].is_array()) throw SchemaError("'rows' must be an array");
  for (const auto& r : j["rows"]) {
    if (!r.is_object() || !r.contains("c") || !r.contains("b"))
      throw SchemaError("each row needs 'c' and 'b'");
    auto c = rationals_from_json(r["c"]);
    if (static_cast<int>(c.size()) != sys.dim()) throw SchemaError("row length does not match 'vars'");
    sys.add_row(std::move(c), rational_from_json(r["b"]));
  }
  return sys;
}

inline Json points_to_json(const std::vector<std::vector<Rational>>& pts) {
  Json a = Json::array();
  for (const auto& p : pts) a.push_back(rationals_to_json(p));
  return a;
}

// ---- power ---------------------------------------------------------------

inline Json to_json(const PowerTuple& p) {
  return Json{{"r", rationals_to_json(p.r)}, {"a", to_json(p.a)}};
}

inline Json circuit_to_json(const PotentialGraph& g, const Circuit& c) {
  Json names = Json::array();
  for (int v : c.vertices) names.push_back(g.vertex_name(v));
  return Json{{"vertices", std::move(names)}, {"length", to_json(c.length)}};
}

// ---- set functions -------------------------------------------------------

/// Table of f over all subsets, keyed by the member list "{d[1,1],d[2,1]}".
inline Json set_function_table(const SetFunction& f) {
  if (f.ground_size() > kRegionOfGround) throw CapabilityError("set function table too large to export");
  auto names = user_var_names(f.K, f.L);
  Json rows = Json::array();
  for (Subset s = 0; s < (Subset(1) << f.ground_size()); ++s) {
    Json members = Json::array();
    for (int u = 0; u < f.ground_size(); ++u)
      if (s >> u & 1) members.push_back(names[u]);
    rows.push_back(Json{{"set", std::move(members)}, {"value", to_json(f(s))}});
  }
  return rows;
}

}  // namespace gdof
