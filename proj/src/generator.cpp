#include "dgla/generator.hpp"

#include <array>
#include <deque>
#include <limits>
#include <map>
#include <mutex>
#include <shared_mutex>
#include <utility>

#include "dgla/rational.hpp"

namespace dgla {

namespace {

constexpr std::size_t kCapacity = std::numeric_limits<std::uint16_t>::max();

// Degrees are written once, before the id is handed out, and read lock-free.
struct InternTable {
  std::shared_mutex mutex;
  std::map<std::pair<std::string, int>, std::uint16_t> ids;
  std::deque<std::string> names;
  std::array<std::int16_t, kCapacity + 1> degrees{};
};

InternTable& table() {
  static InternTable t;
  return t;
}

bool valid_name(std::string_view name) {
  if (name.empty()) return false;
  for (char c : name) {
    if (c == ' ' || c == '\t' || c == '\n' || c == '(' || c == ')' || c == '[' || c == ']' ||
        c == ',' || c == '"') {
      return false;
    }
  }
  return true;
}

}  // namespace

Generator Generator::make(std::string_view name, int degree) {
  if (!valid_name(name)) throw Error("invalid generator name '" + std::string(name) + "'");
  if (degree < std::numeric_limits<std::int16_t>::min() || degree > std::numeric_limits<std::int16_t>::max()) {
    throw DegreeError("generator degree out of range");
  }
  auto& t = table();
  std::pair<std::string, int> key(std::string(name), degree);
  {
    std::shared_lock lock(t.mutex);
    if (auto it = t.ids.find(key); it != t.ids.end()) return Generator(it->second);
  }
  std::unique_lock lock(t.mutex);
  if (auto it = t.ids.find(key); it != t.ids.end()) return Generator(it->second);
  if (t.names.size() >= kCapacity) throw Error("generator table exhausted");
  const auto id = static_cast<std::uint16_t>(t.names.size());
  t.degrees[id] = static_cast<std::int16_t>(degree);
  t.names.push_back(key.first);
  t.ids.emplace(std::move(key), id);
  return Generator(id);
}

int Generator::degree() const { return table().degrees[id_]; }

std::string Generator::name() const {
  auto& t = table();
  std::shared_lock lock(t.mutex);
  if (id_ >= t.names.size()) return "?";
  return t.names[id_];
}

}  // namespace dgla
