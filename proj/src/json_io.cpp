#include "dgla/json_io.hpp"

namespace dgla {

GeneratorTable::GeneratorTable(const std::vector<Generator>& gens) {
  for (Generator g : gens) add(g);
}

void GeneratorTable::add(Generator g) {
  const std::string name = g.name();
  auto [it, inserted] = by_name_.emplace(name, g);
  if (!inserted) {
    if (it->second != g) throw Error("generator '" + name + "' declared with two degrees");
    return;
  }
  order_.push_back(g);
}

Generator GeneratorTable::at(const std::string& name) const {
  auto it = by_name_.find(name);
  if (it == by_name_.end()) throw Error("unknown generator '" + name + "'");
  return it->second;
}

json generators_to_json(const std::vector<Generator>& gens) {
  json arr = json::array();
  for (Generator g : gens) arr.push_back({{"name", g.name()}, {"degree", g.degree()}});
  return json{{"generators", arr}};
}

GeneratorTable generators_from_json(const json& j) {
  GeneratorTable table;
  const json& arr = j.contains("generators") ? j.at("generators") : j;
  if (!arr.is_array()) throw Error("generator table must be an array");
  for (const auto& g : arr) table.add(Generator::make(g.at("name").get<std::string>(), g.at("degree").get<int>()));
  return table;
}

json tree_to_json(const BracketTree& t) {
  if (t.is_leaf()) return json{{"gen", t.generator().name()}};
  return json{{"br", json::array({tree_to_json(t.left()), tree_to_json(t.right())})}};
}

BracketTree tree_from_json(const json& j, const GeneratorTable& table) {
  if (j.contains("gen")) return BracketTree::leaf(table.at(j.at("gen").get<std::string>()));
  if (j.contains("br")) {
    const auto& br = j.at("br");
    if (!br.is_array() || br.size() != 2) throw Error("'br' must hold exactly two trees");
    return BracketTree::node(tree_from_json(br[0], table), tree_from_json(br[1], table));
  }
  throw Error("tree must be {\"gen\":...} or {\"br\":[...]}");
}

json element_to_json(const LieElement& x) {
  json terms = json::array();
  for (const auto& [t, c] : x.sorted_terms()) terms.push_back({{"coeff", to_string(c)}, {"tree", tree_to_json(t)}});
  return json{{"terms", terms}};
}

LieElement element_from_json(const json& j, const GeneratorTable& table) {
  LieElement x;
  for (const auto& term : j.at("terms")) {
    const auto& coeff = term.at("coeff");
    Rational c = coeff.is_string() ? parse_rational(coeff.get<std::string>()) : Rational(coeff.get<long>());
    x.add_term(tree_from_json(term.at("tree"), table), c);
  }
  return x;
}

}  // namespace dgla
