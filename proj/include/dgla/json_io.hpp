#pragma once

#include <map>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "dgla/generator.hpp"
#include "dgla/lie_element.hpp"

namespace dgla {

using json = nlohmann::ordered_json;

/// Name -> generator lookup for parsing elements.
class GeneratorTable {
 public:
  GeneratorTable() = default;
  explicit GeneratorTable(const std::vector<Generator>& gens);

  /// Adds a generator; throws on a name clash with a different degree.
  void add(Generator g);
  Generator at(const std::string& name) const;
  bool contains(const std::string& name) const { return by_name_.count(name) != 0; }
  const std::vector<Generator>& generators() const { return order_; }

 private:
  std::map<std::string, Generator> by_name_;
  std::vector<Generator> order_;
};

/// `{"generators":[{"name":"a","degree":-1},...]}`
json generators_to_json(const std::vector<Generator>& gens);
GeneratorTable generators_from_json(const json& j);

/// `{"gen":"a"}` or `{"br":[T,T]}`
json tree_to_json(const BracketTree& t);
BracketTree tree_from_json(const json& j, const GeneratorTable& table);

/// `{"terms":[{"coeff":"-1/2","tree":T},...]}` in canonical term order.
json element_to_json(const LieElement& x);
LieElement element_from_json(const json& j, const GeneratorTable& table);

}  // namespace dgla
