#pragma once

#include <unordered_map>
#include <utility>
#include <vector>

#include "dgla/assoc_series.hpp"
#include "dgla/generator.hpp"

namespace dgla {

/// Differential data on generators, extended to words as a degree -1 graded
/// derivation:  d(x1...xn) = sum_i (-1)^{|x1|+...+|x_{i-1}|} x1..d(xi)..xn.
/// Restricted to Lie elements this is the graded Leibniz rule
/// d[a,b] = [da,b] + (-1)^{|a|}[a,db].
class Differential {
 public:
  Differential() = default;

  void set(Generator g, const AssocSeries& value);
  bool defines(Generator g) const { return values_.count(g.id()) != 0; }
  const AssocSeries& value(Generator g) const;

  /// Applies the derivation, truncating at max_length. Unknown generators throw.
  AssocSeries apply(const AssocSeries& x, int max_length) const;
  AssocSeries apply(const AssocSeries& x) const { return apply(x, x.max_length()); }

 private:
  struct Entry {
    AssocSeries value;
    std::vector<std::pair<Word, Rational>> by_length;  // sorted by word length
  };
  std::unordered_map<std::uint16_t, Entry> values_;
};

}  // namespace dgla
