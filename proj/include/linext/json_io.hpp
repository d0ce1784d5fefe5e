#pragma once

#include <istream>
#include <string>

#include <json.hpp>

#include "linext/errors.hpp"
#include "linext/polytope.hpp"
#include "linext/poset.hpp"

namespace linext {

/// {"n": int, "relations": [[u,v], ...]} — relations are closed on load and
/// emitted as cover relations.
inline nlohmann::json poset_to_json(const Poset& p) {
  nlohmann::json j;
  j["n"] = p.size();
  j["relations"] = nlohmann::json::array();
  for (auto [u, v] : p.cover_relations()) j["relations"].push_back({u, v});
  return j;
}

inline Poset poset_from_json(const nlohmann::json& j) {
  if (!j.contains("n") || !j["n"].is_number_integer())
    throw precondition_violated("poset json: missing integer field 'n'");
  const int n = j["n"].get<int>();
  std::vector<std::pair<int, int>> rels;
  if (j.contains("relations"))
    for (const auto& r : j["relations"]) {
      if (!r.is_array() || r.size() != 2)
        throw precondition_violated("poset json: relation must be a pair");
      rels.emplace_back(r[0].get<int>(), r[1].get<int>());
    }
  return Poset::from_cover_relations(n, rels);
}

inline Poset poset_from_stream(std::istream& in) {
  nlohmann::json j;
  in >> j;
  return poset_from_json(j);
}

inline nlohmann::json constraints_to_json(const ConstraintSystem& c) {
  nlohmann::json j;
  j["ambient"] = c.ambient;
  j["A"] = c.A;
  j["b"] = c.b;
  j["fixed"] = nlohmann::json::object();
  for (auto [coord, val] : c.fixed) j["fixed"][std::to_string(coord)] = val;
  return j;
}

inline ConstraintSystem constraints_from_json(const nlohmann::json& j) {
  ConstraintSystem c;
  c.ambient = j.at("ambient").get<int>();
  c.A = j.at("A").get<std::vector<std::vector<long>>>();
  c.b = j.at("b").get<std::vector<long>>();
  if (j.contains("fixed"))
    for (auto it = j["fixed"].begin(); it != j["fixed"].end(); ++it)
      c.fixed[std::stoi(it.key())] = it.value().get<long>();
  c.check();
  return c;
}

}  // namespace linext
