#include "dgla/differential.hpp"

#include <algorithm>

namespace dgla {

void Differential::set(Generator g, const AssocSeries& value) {
  Entry e{value, {value.terms().begin(), value.terms().end()}};
  std::stable_sort(e.by_length.begin(), e.by_length.end(),
                   [](const auto& x, const auto& y) { return x.first.size() < y.first.size(); });
  values_.insert_or_assign(g.id(), std::move(e));
}

const AssocSeries& Differential::value(Generator g) const {
  auto it = values_.find(g.id());
  if (it == values_.end()) throw Error("differential not defined on '" + g.name() + "'");
  return it->second.value;
}

AssocSeries Differential::apply(const AssocSeries& x, int max_length) const {
  AssocSeries out(max_length);
  for (const auto& [w, c] : x.terms()) {
    int prefix_degree = 0;
    for (int i = 0; i < w.size(); ++i) {
      const Generator g = w[i];
      auto it = values_.find(g.id());
      if (it == values_.end()) throw Error("differential not defined on '" + g.name() + "'");
      if (it->second.value.max_length() < max_length - (w.size() - 1)) {
        throw Error("differential of '" + g.name() + "' is not known to the requested order");
      }
      const int room = max_length - (w.size() - 1);
      const Rational coeff = (prefix_degree & 1) ? Rational(-c) : c;
      const Word head = w.prefix(i);
      const Word tail = w.suffix_from(i + 1);
      for (const auto& [dw, dc] : it->second.by_length) {
        if (dw.size() > room) break;
        out.add_term(head.concat(dw).concat(tail), coeff * dc);
      }
      prefix_degree += g.degree();
    }
  }
  return out;
}

}  // namespace dgla
