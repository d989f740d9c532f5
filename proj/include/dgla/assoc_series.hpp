#pragma once

#include <array>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "dgla/generator.hpp"
#include "dgla/rational.hpp"

namespace dgla {

/// Longest word an AssocSeries can hold; bounds truncation orders to 14 brackets.
inline constexpr int kMaxWordLength = 15;

/// A word in generators, stored inline.
class Word {
 public:
  Word() = default;
  Word(std::initializer_list<Generator> letters);

  int size() const { return len_; }
  bool empty() const { return len_ == 0; }
  Generator operator[](int i) const { return Generator::from_id(letters_[static_cast<std::size_t>(i)]); }

  void push_back(Generator g);
  Word concat(const Word& other) const;
  Word reversed() const;
  Word prefix(int n) const;
  Word suffix_from(int i) const;

  /// Sum of the letter degrees.
  int degree() const;
  bool odd() const { return (degree() & 1) != 0; }

  /// Space-separated generator names; "1" for the empty word.
  std::string to_string() const;

  friend bool operator==(const Word& a, const Word& b) {
    if (a.len_ != b.len_) return false;
    for (int i = 0; i < a.len_; ++i) {
      if (a.letters_[static_cast<std::size_t>(i)] != b.letters_[static_cast<std::size_t>(i)]) return false;
    }
    return true;
  }
  /// Lexicographic; a proper prefix sorts first.
  friend std::strong_ordering operator<=>(const Word& a, const Word& b);

  std::size_t hash() const;

 private:
  std::uint8_t len_ = 0;
  std::array<std::uint16_t, kMaxWordLength> letters_{};
};

struct WordHash {
  std::size_t operator()(const Word& w) const noexcept { return w.hash(); }
};

/// Sets a process-wide cap on the number of terms any single series may hold
/// (0 disables). Exceeding it raises TermLimitError.
void set_max_terms(std::size_t limit);
std::size_t max_terms();

/// Finite Q-linear combination of words, truncated at a maximum word length.
///
/// Products are truncated concatenation; no signs arise in the product itself.
/// A Lie element with m brackets expands into words of length m + 1, so a
/// series with max_length N + 1 carries a Lie computation modulo > N brackets.
class AssocSeries {
 public:
  using Terms = std::unordered_map<Word, Rational, WordHash>;

  explicit AssocSeries(int max_length = kMaxWordLength);

  static AssocSeries generator(Generator g, int max_length);
  static AssocSeries word(const Word& w, const Rational& c, int max_length);
  static AssocSeries scalar(const Rational& c, int max_length);

  int max_length() const { return max_length_; }
  const Terms& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }
  Rational coefficient(const Word& w) const;

  /// Adds c*w; words longer than max_length are dropped, zero sums erased.
  void add_term(const Word& w, const Rational& c);

  /// Adds c*other term-wise without narrowing this series' bound.
  void add_scaled(const AssocSeries& other, const Rational& c);

  AssocSeries truncated(int max_length) const;
  /// Terms whose word length equals `length`.
  AssocSeries length_component(int length) const;
  /// Length of the shortest stored word (max_length + 1 when zero).
  int min_length() const;
  int max_stored_length() const;

  /// Degree shared by every word, if all words agree (nullopt when zero or mixed).
  std::optional<int> degree() const;
  bool is_homogeneous() const;
  /// True when every word's degree equals d (vacuously true for zero).
  bool has_degree(int d) const;

  /// Terms in canonical order: by length, then lexicographically by names.
  std::vector<std::pair<Word, Rational>> sorted_terms() const;
  /// Terms ordered lexicographically by letter id (prefix first); used for trie walks.
  std::vector<std::pair<Word, Rational>> lex_terms() const;

  AssocSeries& operator+=(const AssocSeries& other);
  AssocSeries& operator-=(const AssocSeries& other);
  AssocSeries& operator*=(const Rational& c);
  AssocSeries operator-() const;

  friend AssocSeries operator+(AssocSeries a, const AssocSeries& b) { return a += b; }
  friend AssocSeries operator-(AssocSeries a, const AssocSeries& b) { return a -= b; }
  friend AssocSeries operator*(AssocSeries a, const Rational& c) { return a *= c; }
  friend AssocSeries operator*(const Rational& c, AssocSeries a) { return a *= c; }
  /// Truncated product at min(max_length) of the factors.
  friend AssocSeries operator*(const AssocSeries& a, const AssocSeries& b);

  friend bool operator==(const AssocSeries& a, const AssocSeries& b) { return a.terms_ == b.terms_; }

  std::string to_string() const;

 private:
  void check_limit() const;

  int max_length_;
  Terms terms_;
};

/// Product truncated at an explicit length. Use when the caller knows the
/// factors are exact up to the contributions that survive at `max_length`.
AssocSeries multiply(const AssocSeries& a, const AssocSeries& b, int max_length);

/// Graded commutator ab - (-1)^{|a||b|} ba, applied word-pair-wise.
AssocSeries commutator(const AssocSeries& a, const AssocSeries& b);

/// exp(x) = sum x^k / k! for x without constant term.
AssocSeries exp_series(const AssocSeries& x);
/// log(1 + z) for z without constant term.
AssocSeries log1p_series(const AssocSeries& z);

/// Algebra homomorphism given by letter images; letters without an image
/// raise Error. Result truncated at max_length.
using LetterImage = std::function<const AssocSeries*(Generator)>;
AssocSeries substitute(const AssocSeries& x, const LetterImage& image, int max_length);

}  // namespace dgla
