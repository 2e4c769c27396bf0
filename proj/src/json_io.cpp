#include "kitaev/json_io.hpp"

#include <stdexcept>

namespace kitaev {

using nlohmann::json;

json edge_to_json(const EdgeId& e) {
  return {{"x", e.x}, {"y", e.y}, {"dir", e.dir == Direction::horizontal ? "horizontal" : "vertical"}};
}

EdgeId edge_from_json(const json& j) {
  const std::string dir = j.at("dir").get<std::string>();
  if (dir != "horizontal" && dir != "vertical") throw std::invalid_argument("edge dir must be horizontal or vertical");
  return {j.at("x").get<int>(), j.at("y").get<int>(), dir == "horizontal" ? Direction::horizontal : Direction::vertical};
}

json operator_to_json(const OperatorSum& x) {
  const OperatorSpace& space = *x.space();
  json out = json::array();
  for (const auto& t : x.terms()) {
    json edges = json::array();
    for (std::size_t e = 0; e < t.signature.size(); ++e) {
      if (t.signature[e] == 0) continue;
      edges.push_back({{"edge", edge_to_json(space.patch().edges()[e])},
                       {"g", space.group().residues_at(space.code_g(t.signature[e]))},
                       {"chi", space.group().residues_at(space.code_chi(t.signature[e]))}});
    }
    out.push_back({{"coeff_re", t.coeff.real()}, {"coeff_im", t.coeff.imag()}, {"edges", edges}});
  }
  return out;
}

OperatorSum operator_from_json(const SpacePtr& space, const json& j) {
  if (!j.is_array()) throw std::invalid_argument("operator JSON must be an array of terms");
  const GroupSpec& G = space->group();
  std::vector<Term> terms;
  for (const auto& jt : j) {
    Signature sig(space->num_edges(), 0);
    for (const auto& je : jt.at("edges")) {
      const auto g = je.at("g").get<std::vector<int>>();
      const auto chi = je.at("chi").get<std::vector<int>>();
      G.validate(g);
      G.validate(chi);
      sig[space->patch().edge_index(edge_from_json(je.at("edge")))] = space->encode(G.index_of(g), G.index_of(chi));
    }
    terms.push_back({sig, {jt.at("coeff_re").get<double>(), jt.at("coeff_im").get<double>()}});
  }
  return OperatorSum::from_terms(space, std::move(terms));
}

json syndrome_to_json(const SyndromeConfig& c) {
  json sites = json::array();
  for (const auto& s : c.window())
    sites.push_back({{"kind", s.is_vertex() ? "vertex" : "face"},
                     {"x", s.x},
                     {"y", s.y},
                     {"value", c.group().residues_at(c.index_at(s))}});
  return {{"sites", sites}};
}

SyndromeConfig syndrome_from_json(const GroupSpec& group, const json& j) {
  SyndromeConfig c(group);
  for (const auto& js : j.at("sites")) {
    const std::string kind = js.at("kind").get<std::string>();
    if (kind != "vertex" && kind != "face") throw std::invalid_argument("site kind must be vertex or face");
    const SiteId s{kind == "vertex" ? SiteKind::vertex : SiteKind::face, js.at("x").get<int>(), js.at("y").get<int>()};
    const auto value = js.at("value").get<std::vector<int>>();
    group.validate(value);
    c.set_index(s, group.index_of(value));
  }
  return c;
}

}  // namespace kitaev
