#include "dgla/lie_element.hpp"

#include <algorithm>
#include <mutex>

namespace dgla {

struct BracketTree::Node {
  Generator gen;
  std::optional<BracketTree> left;
  std::optional<BracketTree> right;
  int degree = 0;
  int brackets = 0;
};

BracketTree BracketTree::leaf(Generator g) {
  auto n = std::make_shared<Node>();
  n->gen = g;
  n->degree = g.degree();
  return BracketTree(std::move(n));
}

BracketTree BracketTree::node(const BracketTree& left, const BracketTree& right) {
  auto n = std::make_shared<Node>();
  n->left = left;
  n->right = right;
  n->degree = left.degree() + right.degree();
  n->brackets = left.bracket_count() + right.bracket_count() + 1;
  return BracketTree(std::move(n));
}

bool BracketTree::is_leaf() const { return !node_->left.has_value(); }
Generator BracketTree::generator() const { return node_->gen; }
const BracketTree& BracketTree::left() const { return *node_->left; }
const BracketTree& BracketTree::right() const { return *node_->right; }
int BracketTree::degree() const { return node_->degree; }
int BracketTree::bracket_count() const { return node_->brackets; }

std::string BracketTree::canonical() const {
  if (is_leaf()) return generator().name();
  return "br(" + left().canonical() + "," + right().canonical() + ")";
}

std::strong_ordering operator<=>(const BracketTree& a, const BracketTree& b) {
  if (a.node_ == b.node_) return std::strong_ordering::equal;
  if (auto c = a.bracket_count() <=> b.bracket_count(); c != 0) return c;
  if (a.is_leaf()) return a.generator() <=> b.generator();
  if (auto c = a.left() <=> b.left(); c != 0) return c;
  return a.right() <=> b.right();
}

// ---------------------------------------------------------------- LieElement

LieElement LieElement::generator(Generator g) { return tree(BracketTree::leaf(g)); }

LieElement LieElement::tree(const BracketTree& t, const Rational& c) {
  LieElement x;
  x.add_term(t, c);
  return x;
}

void LieElement::add_term(const BracketTree& t, const Rational& c) {
  if (sgn(c) == 0) return;
  auto [it, inserted] = terms_.try_emplace(t, c);
  if (!inserted) {
    it->second += c;
    if (sgn(it->second) == 0) terms_.erase(it);
  }
}

std::optional<int> LieElement::degree() const {
  std::optional<int> d;
  for (const auto& [t, c] : terms_) {
    if (d && *d != t.degree()) return std::nullopt;
    d = t.degree();
  }
  return d;
}

int LieElement::max_bracket_count() const {
  int m = -1;
  for (const auto& [t, c] : terms_) m = std::max(m, t.bracket_count());
  return m;
}

std::vector<std::pair<BracketTree, Rational>> LieElement::sorted_terms() const {
  std::vector<std::tuple<int, std::string, BracketTree, Rational>> keyed;
  keyed.reserve(terms_.size());
  for (const auto& [t, c] : terms_) keyed.emplace_back(t.bracket_count(), t.canonical(), t, c);
  std::sort(keyed.begin(), keyed.end(), [](const auto& x, const auto& y) {
    if (std::get<0>(x) != std::get<0>(y)) return std::get<0>(x) < std::get<0>(y);
    return std::get<1>(x) < std::get<1>(y);
  });
  std::vector<std::pair<BracketTree, Rational>> out;
  out.reserve(keyed.size());
  for (auto& k : keyed) out.emplace_back(std::get<2>(k), std::get<3>(k));
  return out;
}

LieElement& LieElement::operator+=(const LieElement& other) {
  for (const auto& [t, c] : other.terms_) add_term(t, c);
  return *this;
}

LieElement& LieElement::operator-=(const LieElement& other) {
  for (const auto& [t, c] : other.terms_) add_term(t, -c);
  return *this;
}

LieElement& LieElement::operator*=(const Rational& c) {
  if (sgn(c) == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [t, x] : terms_) x *= c;
  return *this;
}

LieElement LieElement::operator-() const {
  LieElement x = *this;
  for (auto& [t, c] : x.terms_) c = -c;
  return x;
}

std::string LieElement::to_string() const {
  if (terms_.empty()) return "0";
  std::string s;
  bool first = true;
  for (const auto& [t, c] : sorted_terms()) {
    if (!first) s += " + ";
    first = false;
    s += "(" + dgla::to_string(c) + ")*" + t.canonical();
  }
  return s;
}

LieElement bracket(const LieElement& x, const LieElement& y) {
  LieElement out;
  for (const auto& [tx, cx] : x.terms()) {
    for (const auto& [ty, cy] : y.terms()) out.add_term(BracketTree::node(tx, ty), cx * cy);
  }
  return out;
}

namespace {

AssocSeries expand_tree(const BracketTree& t, int max_len) {
  if (t.is_leaf()) return AssocSeries::generator(t.generator(), max_len);
  return commutator(expand_tree(t.left(), max_len), expand_tree(t.right(), max_len));
}

}  // namespace

AssocSeries expand_assoc(const LieElement& x, int max_brackets) {
  if (max_brackets < 0) throw Error("expand_assoc: negative bracket bound");
  const int max_len = max_brackets + 1;
  AssocSeries out(max_len);
  for (const auto& [t, c] : x.terms()) {
    if (t.bracket_count() > max_brackets) continue;
    out.add_scaled(expand_tree(t, max_len), c);
  }
  return out;
}

bool is_equal(const LieElement& x, const LieElement& y, int order) {
  return expand_assoc(x - y, order).is_zero();
}

LieElement component(const LieElement& x, int m) {
  if (m < 0) throw Error("component: negative bracket count");
  LieElement out;
  for (const auto& [t, c] : x.terms()) {
    if (t.bracket_count() == m) out.add_term(t, c);
  }
  return out;
}

BracketTree right_normed(const Word& w) {
  if (w.empty()) throw Error("right_normed: empty word");
  BracketTree t = BracketTree::leaf(w[w.size() - 1]);
  for (int i = w.size() - 2; i >= 0; --i) t = BracketTree::node(BracketTree::leaf(w[i]), t);
  return t;
}

LieElement dynkin_projection(const AssocSeries& s) {
  LieElement out;
  for (const auto& [w, c] : s.terms()) {
    if (w.empty()) throw Error("dynkin_projection: constant term is not a Lie element");
    const int n = w.size();
    Rational coeff = c / n;
    if (n < 2) {
      out.add_term(right_normed(w), coeff);
      continue;
    }
    // Innermost pair in name order: [x, y] = -(-1)^{|x||y|} [y, x]; [x, x] = 0 for even x.
    const Generator x = w[n - 2], y = w[n - 1];
    if (x == y && x.degree() % 2 == 0) continue;
    if (y.name() < x.name()) {
      Word swapped = w.prefix(n - 2);
      swapped.push_back(y);
      swapped.push_back(x);
      if ((x.degree() * y.degree()) % 2 == 0) coeff = -coeff;
      out.add_term(right_normed(swapped), coeff);
    } else {
      out.add_term(right_normed(w), coeff);
    }
  }
  return out;
}

LieElement normalize(const LieElement& x, int order) { return dynkin_projection(expand_assoc(x, order)); }

Rational bernoulli(int i) {
  if (i < 0) throw Error("bernoulli: negative index");
  static std::mutex mutex;
  static std::vector<Rational> cache{Rational(1)};
  std::lock_guard lock(mutex);
  while (static_cast<int>(cache.size()) <= i) {
    // sum_{k=0}^{m} C(m+1, k) B_k = 0
    const int m = static_cast<int>(cache.size());
    Rational acc = 0;
    mpz_class binom = 1;  // C(m+1, 0)
    for (int k = 0; k < m; ++k) {
      acc += Rational(binom) * cache[static_cast<std::size_t>(k)];
      binom = binom * (m + 1 - k) / (k + 1);
    }
    Rational b = -acc / (m + 1);
    b.canonicalize();
    cache.push_back(b);
  }
  return cache[static_cast<std::size_t>(i)];
}

}  // namespace dgla
