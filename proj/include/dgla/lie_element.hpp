#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "dgla/assoc_series.hpp"
#include "dgla/generator.hpp"
#include "dgla/rational.hpp"

namespace dgla {

/// Immutable bracketing tree: a generator leaf or a node [left, right].
class BracketTree {
 public:
  static BracketTree leaf(Generator g);
  static BracketTree node(const BracketTree& left, const BracketTree& right);

  bool is_leaf() const;
  Generator generator() const;  ///< leaf only
  const BracketTree& left() const;  ///< node only
  const BracketTree& right() const;  ///< node only

  int degree() const;
  int bracket_count() const;

  /// Prefix encoding: leaves are names, nodes are `br(L,R)`.
  std::string canonical() const;

  /// Structural total order (bracket count first).
  friend std::strong_ordering operator<=>(const BracketTree& a, const BracketTree& b);
  friend bool operator==(const BracketTree& a, const BracketTree& b) { return (a <=> b) == 0; }

 private:
  struct Node;
  explicit BracketTree(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  std::shared_ptr<const Node> node_;
};

/// Finite Q-linear combination of bracketing trees over graded generators.
///
/// Trees are kept as constructed; graded antisymmetry and Jacobi are only
/// visible through expand_assoc, which is the equality oracle.
class LieElement {
 public:
  using Terms = std::map<BracketTree, Rational>;

  LieElement() = default;
  static LieElement generator(Generator g);
  static LieElement tree(const BracketTree& t, const Rational& c = 1);

  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }

  void add_term(const BracketTree& t, const Rational& c);

  std::optional<int> degree() const;
  bool is_homogeneous() const { return is_zero() || degree().has_value(); }
  int max_bracket_count() const;

  /// Terms sorted by bracket count, then canonical tree encoding.
  std::vector<std::pair<BracketTree, Rational>> sorted_terms() const;

  LieElement& operator+=(const LieElement& other);
  LieElement& operator-=(const LieElement& other);
  LieElement& operator*=(const Rational& c);
  LieElement operator-() const;

  friend LieElement operator+(LieElement a, const LieElement& b) { return a += b; }
  friend LieElement operator-(LieElement a, const LieElement& b) { return a -= b; }
  friend LieElement operator*(LieElement a, const Rational& c) { return a *= c; }
  friend LieElement operator*(const Rational& c, LieElement a) { return a *= c; }

  /// Structural equality of the stored trees (not the algebraic one; see is_equal).
  friend bool operator==(const LieElement& a, const LieElement& b) { return a.terms_ == b.terms_; }

  std::string to_string() const;

 private:
  Terms terms_;
};

/// Formal bilinear bracket over term pairs.
LieElement bracket(const LieElement& x, const LieElement& y);

/// Expansion into the free graded associative algebra:
/// [u,v] -> uv - (-1)^{|u||v|} vu, dropping trees with more than max_brackets brackets.
AssocSeries expand_assoc(const LieElement& x, int max_brackets);

/// x == y modulo terms with more than `order` brackets.
bool is_equal(const LieElement& x, const LieElement& y, int order);

/// x^[m]: the terms with exactly m brackets.
LieElement component(const LieElement& x, int m);

/// Right-normed bracketing [w1,[w2,...,[w_{n-1},w_n]...]] of a non-empty word.
BracketTree right_normed(const Word& w);

/// Projects a Lie element given in associative form back to trees: each word w
/// of length d maps to (1/d) * right_normed(w), with the innermost pair put in
/// name order and even self-brackets dropped. Exact on primitive (Lie) inputs;
/// the result is a canonical form, so equal Lie elements project to identical
/// LieElements. Not a basis expansion. Throws on a constant term.
LieElement dynkin_projection(const AssocSeries& s);

/// Canonical representative: dynkin_projection(expand_assoc(x, order)).
LieElement normalize(const LieElement& x, int order);

/// Bernoulli number B_i with B_1 = -1/2 (coefficients of x / (e^x - 1)).
Rational bernoulli(int i);

}  // namespace dgla
