#pragma once

#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "dgla/assoc_series.hpp"
#include "dgla/differential.hpp"
#include "dgla/lie_element.hpp"

namespace dgla {

// ------------------------------------------------------------------------
// Truncated Lie-series calculus.
//
// Two layers share the same names. The AssocSeries overloads take Lie
// elements already expanded into the associative algebra and truncate at the
// operands' common max_length; model builders work at this layer. The
// LieElement overloads take an explicit bracket `order`, check degree
// preconditions, and return canonical right-normed trees.
// ------------------------------------------------------------------------

/// ad_e(x) = [e, x].
AssocSeries ad(const AssocSeries& e, const AssocSeries& x);

/// BCH(x, y) = log(exp(x) exp(y)).
AssocSeries bch2(const AssocSeries& x, const AssocSeries& y);
/// Left fold of bch2; an empty list gives zero at `max_length`.
AssocSeries bch_multi(const std::vector<AssocSeries>& xs, int max_length);

/// sum_k ad_e^k(x) / k!.
AssocSeries exp_ad(const AssocSeries& e, const AssocSeries& x);

/// u_e(a) = e^{-ad_e} a + sum_n (-1)^n / (n+1)! ad_e^n (de).
AssocSeries flow(const AssocSeries& e, const AssocSeries& a, const Differential& d);

/// de = ad_e(b) + sum_i B_i / i! ad_e^i (b - a) for an edge e from a to b.
AssocSeries interval_diff(const AssocSeries& e, const AssocSeries& a, const AssocSeries& b);

/// mu_2(x, y) = BCH(x, BCH(-x, y) / 2).
AssocSeries mu2(const AssocSeries& x, const AssocSeries& y);

/// (1/n) sum x_i - 1/(12 n^2) sum_{i != j} [x_i,[x_i,x_j]], truncated at two
/// brackets regardless of max_length. Used where any degree-0 element is
/// acceptable and symmetry is only certified to low order.
AssocSeries mun_two_bracket(const std::vector<AssocSeries>& xs);

bool is_lie_degree(const AssocSeries& x, int degree);

LieElement bch2(const LieElement& x, const LieElement& y, int order);
LieElement bch_multi(const std::vector<LieElement>& xs, int order);
LieElement exp_ad(const LieElement& e, const LieElement& x, int order);
LieElement flow(const LieElement& e, const LieElement& a, const Differential& d, int order);
LieElement flow_time(const LieElement& e, const LieElement& a, const Rational& t, const Differential& d, int order);
LieElement interval_diff(Generator e, Generator a, Generator b, int order);
LieElement mu2(const LieElement& x, const LieElement& y, int order);
/// n = 1: x1; n = 2: mu2 at any order; n >= 3: order <= 2, else OrderCapError.
LieElement mun(const std::vector<LieElement>& xs, int order);

/// Noncommutative polynomial in formal symbols X_1..X_k.
///
/// Substituting ad_{y_j} for X_j and composing left to right gives an
/// operator on Lie elements. Each symbol adds one bracket, so a polynomial
/// used at bracket order N is stored with words of length <= N.
class OperatorPoly {
 public:
  OperatorPoly(int symbols, int order);

  static Generator symbol(int k);
  static OperatorPoly one(int symbols, int order);
  static OperatorPoly variable(int symbols, int k, int order);
  /// Wraps a series over symbol(1..symbols); rejects other letters.
  static OperatorPoly from_series(int symbols, const AssocSeries& s);

  int symbols() const { return symbols_; }
  int order() const { return series_.max_length(); }
  const AssocSeries& series() const { return series_; }

  Rational coefficient(const std::vector<int>& word) const;
  Rational scalar_term() const { return series_.coefficient(Word{}); }
  bool is_zero() const { return series_.is_zero(); }

  /// Terms ordered by length, then symbol indices.
  std::vector<std::pair<std::vector<int>, Rational>> sorted_terms() const;

  /// P(images[0], ..., images[k-1]); all images share a symbol count.
  OperatorPoly substitute(const std::vector<OperatorPoly>& images) const;

  OperatorPoly& operator+=(const OperatorPoly& o);
  OperatorPoly& operator-=(const OperatorPoly& o);
  OperatorPoly& operator*=(const Rational& c);
  OperatorPoly operator-() const;
  friend OperatorPoly operator+(OperatorPoly a, const OperatorPoly& b) { return a += b; }
  friend OperatorPoly operator-(OperatorPoly a, const OperatorPoly& b) { return a -= b; }
  friend OperatorPoly operator*(OperatorPoly a, const Rational& c) { return a *= c; }
  friend OperatorPoly operator*(const OperatorPoly& a, const OperatorPoly& b);
  friend bool operator==(const OperatorPoly& a, const OperatorPoly& b) {
    return a.symbols_ == b.symbols_ && a.series_ == b.series_;
  }

  /// `{"symbols":k,"terms":[{"coeff":"1/12","word":[1,1]},...]}`
  nlohmann::ordered_json to_json() const;
  static OperatorPoly from_json(const nlohmann::ordered_json& j, int order);

  std::string to_string() const;

 private:
  OperatorPoly(int symbols, AssocSeries s) : symbols_(symbols), series_(std::move(s)) {}
  int symbols_;
  AssocSeries series_;
};

/// BCH of operator polynomials (composition product).
OperatorPoly bch2(const OperatorPoly& x, const OperatorPoly& y);
OperatorPoly bch_multi(const std::vector<OperatorPoly>& xs);

/// Q(X, Y) with BCH(x, y) = x + y + Q(ad_x, ad_y) y. Extracted from the
/// right-normed Dynkin form of BCH - x - y: words ending in y keep their
/// prefix; words ending in (y x) become -(prefix X); words whose last two
/// letters coincide vanish and are dropped.
OperatorPoly extract_Q(int order);

/// Applies P with X_j -> ad_{args[j-1]} to `target`.
AssocSeries op_apply(const OperatorPoly& p, const std::vector<AssocSeries>& args, const AssocSeries& target);
LieElement op_apply(const OperatorPoly& p, const std::vector<LieElement>& args, const LieElement& target, int order);

/// An edge path: degree-0 edges each traversed forward (+1) or reversed (-1).
struct Path {
  std::vector<std::pair<LieElement, int>> edges;
};

/// Iterated BCH of the signed edges in traversal order.
LieElement path_bch(const Path& path, int order);

}  // namespace dgla
