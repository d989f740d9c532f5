#include "dgla/series_calc.hpp"

#include <algorithm>
#include <string>

#include "dgla/json_io.hpp"

namespace dgla {

namespace {

int common_length(const AssocSeries& x, const AssocSeries& y) { return std::min(x.max_length(), y.max_length()); }

void require_degree(const LieElement& x, int degree, const char* what) {
  for (const auto& [t, c] : x.terms()) {
    if (t.degree() != degree) {
      throw DegreeError(std::string(what) + ": expected degree " + std::to_string(degree) + ", got a term of degree " +
                        std::to_string(t.degree()));
    }
  }
}

void require_order(int order) {
  if (order < 0) throw Error("order must be non-negative");
  if (order + 1 > kMaxWordLength) throw Error("order exceeds supported maximum");
}

}  // namespace

bool is_lie_degree(const AssocSeries& x, int degree) { return x.has_degree(degree); }

AssocSeries ad(const AssocSeries& e, const AssocSeries& x) { return commutator(e, x); }

AssocSeries bch2(const AssocSeries& x, const AssocSeries& y) {
  const int len = common_length(x, y);
  if (x.is_zero()) return y.truncated(len);
  if (y.is_zero()) return x.truncated(len);
  AssocSeries prod = exp_series(x.truncated(len)) * exp_series(y.truncated(len));
  prod.add_term(Word{}, -1);
  return log1p_series(prod);
}

AssocSeries bch_multi(const std::vector<AssocSeries>& xs, int max_length) {
  AssocSeries acc(max_length);
  for (const auto& x : xs) acc = bch2(acc, x.truncated(max_length));
  return acc;
}

AssocSeries exp_ad(const AssocSeries& e, const AssocSeries& x) {
  const int len = common_length(e, x);
  AssocSeries result = x.truncated(len);
  AssocSeries term = result;
  for (int k = 1; k <= len && !term.is_zero(); ++k) {
    term = ad(e, term);
    term *= Rational(1, k);
    result += term;
  }
  return result;
}

AssocSeries flow(const AssocSeries& e, const AssocSeries& a, const Differential& d) {
  const int len = common_length(e, a);
  const AssocSeries de = d.apply(e, len);
  const AssocSeries minus_e = -e.truncated(len);
  // e^{-ad_e} a
  AssocSeries result = a.truncated(len);
  AssocSeries term = result;
  for (int k = 1; k <= len && !term.is_zero(); ++k) {
    term = ad(minus_e, term);
    term *= Rational(1, k);
    result += term;
  }
  // sum_n (-ad_e)^n de / (n+1)!
  term = de;
  result += term;
  for (int n = 1; n <= len && !term.is_zero(); ++n) {
    term = ad(minus_e, term);
    term *= Rational(1, n + 1);
    result += term;
  }
  return result;
}

AssocSeries interval_diff(const AssocSeries& e, const AssocSeries& a, const AssocSeries& b) {
  const int len = std::min(common_length(e, a), b.max_length());
  AssocSeries result = ad(e, b.truncated(len));
  AssocSeries term = b.truncated(len) - a.truncated(len);  // ad_e^i (b - a) / i!
  result += term;
  for (int i = 1; i <= len && !term.is_zero(); ++i) {
    term = ad(e, term);
    term *= Rational(1, i);
    const Rational bi = bernoulli(i);
    if (sgn(bi) != 0) result += term * bi;
  }
  return result;
}

AssocSeries mu2(const AssocSeries& x, const AssocSeries& y) {
  return bch2(x, bch2(-x, y) * Rational(1, 2));
}

AssocSeries mun_two_bracket(const std::vector<AssocSeries>& xs) {
  if (xs.empty()) throw Error("mu_n of an empty list");
  int len = xs.front().max_length();
  for (const auto& x : xs) len = std::min(len, x.max_length());
  const int n = static_cast<int>(xs.size());
  AssocSeries result(len);
  for (const auto& x : xs) result += x.truncated(len) * Rational(1, n);
  const int inner = std::min(len, 3);
  AssocSeries correction(inner);
  for (int i = 0; i < n; ++i) {
    const AssocSeries xi = xs[static_cast<std::size_t>(i)].truncated(inner);
    for (int j = 0; j < n; ++j) {
      if (i == j) continue;
      correction += ad(xi, ad(xi, xs[static_cast<std::size_t>(j)].truncated(inner)));
    }
  }
  result.add_scaled(correction, Rational(-1, 12 * n * n));
  return result;
}

// ---------------------------------------------------------------- LieElement layer

LieElement bch2(const LieElement& x, const LieElement& y, int order) {
  require_order(order);
  require_degree(x, 0, "bch2");
  require_degree(y, 0, "bch2");
  return dynkin_projection(bch2(expand_assoc(x, order), expand_assoc(y, order)));
}

LieElement bch_multi(const std::vector<LieElement>& xs, int order) {
  require_order(order);
  std::vector<AssocSeries> ex;
  for (const auto& x : xs) {
    require_degree(x, 0, "bch_multi");
    ex.push_back(expand_assoc(x, order));
  }
  return dynkin_projection(bch_multi(ex, order + 1));
}

LieElement exp_ad(const LieElement& e, const LieElement& x, int order) {
  require_order(order);
  require_degree(e, 0, "exp_ad");
  return dynkin_projection(exp_ad(expand_assoc(e, order), expand_assoc(x, order)));
}

LieElement flow(const LieElement& e, const LieElement& a, const Differential& d, int order) {
  require_order(order);
  require_degree(e, 0, "flow");
  require_degree(a, -1, "flow");
  return dynkin_projection(flow(expand_assoc(e, order), expand_assoc(a, order), d));
}

LieElement flow_time(const LieElement& e, const LieElement& a, const Rational& t, const Differential& d, int order) {
  return flow(e * t, a, d, order);
}

LieElement interval_diff(Generator e, Generator a, Generator b, int order) {
  require_order(order);
  if (e.degree() != 0 || a.degree() != -1 || b.degree() != -1) {
    throw DegreeError("interval_diff: expected degrees 0, -1, -1");
  }
  const int len = order + 1;
  return dynkin_projection(interval_diff(AssocSeries::generator(e, len), AssocSeries::generator(a, len),
                                         AssocSeries::generator(b, len)));
}

LieElement mu2(const LieElement& x, const LieElement& y, int order) {
  require_order(order);
  require_degree(x, 0, "mu2");
  require_degree(y, 0, "mu2");
  return dynkin_projection(mu2(expand_assoc(x, order), expand_assoc(y, order)));
}

LieElement mun(const std::vector<LieElement>& xs, int order) {
  require_order(order);
  if (xs.empty()) throw Error("mu_n of an empty list");
  for (const auto& x : xs) require_degree(x, 0, "mun");
  if (xs.size() == 1) return normalize(xs.front(), order);
  if (xs.size() == 2) return mu2(xs[0], xs[1], order);
  if (order > 2) throw OrderCapError("μₙ unavailable beyond 2 brackets");
  std::vector<AssocSeries> ex;
  for (const auto& x : xs) ex.push_back(expand_assoc(x, order));
  return dynkin_projection(mun_two_bracket(ex));
}

// ---------------------------------------------------------------- OperatorPoly

OperatorPoly::OperatorPoly(int symbols, int order) : symbols_(symbols), series_(order) {
  if (symbols < 0) throw Error("negative symbol count");
}

Generator OperatorPoly::symbol(int k) {
  if (k < 1) throw Error("operator symbols are numbered from 1");
  return Generator::make("#X" + std::to_string(k), 0);
}

OperatorPoly OperatorPoly::one(int symbols, int order) {
  OperatorPoly p(symbols, order);
  p.series_.add_term(Word{}, 1);
  return p;
}

OperatorPoly OperatorPoly::variable(int symbols, int k, int order) {
  if (k < 1 || k > symbols) throw Error("operator symbol index out of range");
  return OperatorPoly(symbols, AssocSeries::generator(symbol(k), order));
}

namespace {

int symbol_index(Generator g, int symbols) {
  const std::string name = g.name();
  if (g.degree() == 0 && name.rfind("#X", 0) == 0) {
    const int k = std::stoi(name.substr(2));
    if (k >= 1 && k <= symbols) return k;
  }
  throw Error("letter '" + name + "' is not an operator symbol");
}

}  // namespace

OperatorPoly OperatorPoly::from_series(int symbols, const AssocSeries& s) {
  for (const auto& [w, c] : s.terms()) {
    for (int i = 0; i < w.size(); ++i) symbol_index(w[i], symbols);
  }
  return OperatorPoly(symbols, s);
}

Rational OperatorPoly::coefficient(const std::vector<int>& word) const {
  Word w;
  for (int k : word) w.push_back(symbol(k));
  return series_.coefficient(w);
}

std::vector<std::pair<std::vector<int>, Rational>> OperatorPoly::sorted_terms() const {
  std::vector<std::pair<std::vector<int>, Rational>> out;
  for (const auto& [w, c] : series_.terms()) {
    std::vector<int> idx;
    for (int i = 0; i < w.size(); ++i) idx.push_back(symbol_index(w[i], symbols_));
    out.emplace_back(std::move(idx), c);
  }
  std::sort(out.begin(), out.end(), [](const auto& x, const auto& y) {
    if (x.first.size() != y.first.size()) return x.first.size() < y.first.size();
    return x.first < y.first;
  });
  return out;
}

OperatorPoly OperatorPoly::substitute(const std::vector<OperatorPoly>& images) const {
  if (static_cast<int>(images.size()) != symbols_) throw Error("substitute: arity mismatch");
  const int target_symbols = images.empty() ? 0 : images.front().symbols();
  for (const auto& im : images) {
    if (im.symbols() != target_symbols) throw Error("substitute: images disagree on symbol count");
    if (sgn(im.scalar_term()) != 0) throw Error("substitute: images must have zero scalar term");
  }
  const int len = order();
  auto image = [&](Generator g) -> const AssocSeries* {
    return &images[static_cast<std::size_t>(symbol_index(g, symbols_) - 1)].series_;
  };
  std::vector<AssocSeries> widened;
  for (const auto& im : images) {
    if (im.order() < len) throw Error("substitute: image truncated below target order");
  }
  return OperatorPoly(target_symbols, dgla::substitute(series_, image, len));
}

OperatorPoly& OperatorPoly::operator+=(const OperatorPoly& o) {
  if (o.symbols_ != symbols_) throw Error("operator symbol counts differ");
  series_ += o.series_;
  return *this;
}

OperatorPoly& OperatorPoly::operator-=(const OperatorPoly& o) {
  if (o.symbols_ != symbols_) throw Error("operator symbol counts differ");
  series_ -= o.series_;
  return *this;
}

OperatorPoly& OperatorPoly::operator*=(const Rational& c) {
  series_ *= c;
  return *this;
}

OperatorPoly OperatorPoly::operator-() const { return OperatorPoly(symbols_, -series_); }

OperatorPoly operator*(const OperatorPoly& a, const OperatorPoly& b) {
  if (a.symbols_ != b.symbols_) throw Error("operator symbol counts differ");
  return OperatorPoly(a.symbols_, a.series_ * b.series_);
}

nlohmann::ordered_json OperatorPoly::to_json() const {
  auto terms = nlohmann::ordered_json::array();
  for (const auto& [w, c] : sorted_terms()) terms.push_back({{"coeff", dgla::to_string(c)}, {"word", w}});
  return {{"symbols", symbols_}, {"terms", terms}};
}

OperatorPoly OperatorPoly::from_json(const nlohmann::ordered_json& j, int order) {
  OperatorPoly p(j.at("symbols").get<int>(), order);
  for (const auto& t : j.at("terms")) {
    Word w;
    for (int k : t.at("word").get<std::vector<int>>()) {
      if (k < 1 || k > p.symbols_) throw Error("operator word index out of range");
      w.push_back(symbol(k));
    }
    p.series_.add_term(w, parse_rational(t.at("coeff").get<std::string>()));
  }
  return p;
}

std::string OperatorPoly::to_string() const {
  if (is_zero()) return "0";
  std::string s;
  bool first = true;
  for (const auto& [w, c] : sorted_terms()) {
    if (!first) s += " + ";
    first = false;
    s += "(" + dgla::to_string(c) + ")";
    for (int k : w) s += "*X" + std::to_string(k);
  }
  return s;
}

OperatorPoly bch2(const OperatorPoly& x, const OperatorPoly& y) {
  if (x.symbols() != y.symbols()) throw Error("operator symbol counts differ");
  return OperatorPoly::from_series(x.symbols(), bch2(x.series(), y.series()));
}

OperatorPoly bch_multi(const std::vector<OperatorPoly>& xs) {
  if (xs.empty()) throw Error("bch_multi of an empty operator list");
  OperatorPoly acc = xs.front();
  for (std::size_t i = 1; i < xs.size(); ++i) acc = bch2(acc, xs[i]);
  return acc;
}

OperatorPoly extract_Q(int order) {
  if (order < 1) throw Error("extract_Q: order must be at least 1");
  require_order(order);
  const Generator x = Generator::make("#qx", 0);
  const Generator y = Generator::make("#qy", 0);
  const int len = order + 1;
  const AssocSeries xs = AssocSeries::generator(x, len);
  const AssocSeries ys = AssocSeries::generator(y, len);
  const AssocSeries rest = bch2(xs, ys) - xs - ys;
  const Generator X = OperatorPoly::symbol(1);
  const Generator Y = OperatorPoly::symbol(2);
  auto to_symbol = [&](Generator g) { return g == x ? X : Y; };
  AssocSeries q(order);
  for (const auto& [w, c] : rest.terms()) {
    const int n = w.size();
    if (n < 2 || w[n - 1] == w[n - 2]) continue;
    Word op;
    if (w[n - 1] == y) {
      for (int i = 0; i + 1 < n; ++i) op.push_back(to_symbol(w[i]));
      q.add_term(op, c / n);
    } else {
      // [.., [y, x]] = -[.., [x, y]]
      for (int i = 0; i + 2 < n; ++i) op.push_back(to_symbol(w[i]));
      op.push_back(X);
      q.add_term(op, -c / n);
    }
  }
  return OperatorPoly::from_series(2, q);
}

namespace {

using LexTerms = std::vector<std::pair<Word, Rational>>;

AssocSeries apply_range(LexTerms::const_iterator begin, LexTerms::const_iterator end, int depth,
                        const std::vector<AssocSeries>& args, int symbols, const AssocSeries& target) {
  AssocSeries out(target.max_length());
  auto it = begin;
  while (it != end && it->first.size() == depth) {
    out.add_scaled(target, it->second);
    ++it;
  }
  while (it != end) {
    const Generator letter = it->first[depth];
    auto group_end = it;
    while (group_end != end && group_end->first[depth] == letter) ++group_end;
    const auto& arg = args[static_cast<std::size_t>(symbol_index(letter, symbols) - 1)];
    out.add_scaled(ad(arg, apply_range(it, group_end, depth + 1, args, symbols, target)), 1);
    it = group_end;
  }
  return out;
}

}  // namespace

AssocSeries op_apply(const OperatorPoly& p, const std::vector<AssocSeries>& args, const AssocSeries& target) {
  if (static_cast<int>(args.size()) != p.symbols()) throw Error("op_apply: arity mismatch");
  int len = target.max_length();
  for (const auto& a : args) len = std::min(len, a.max_length());
  const auto terms = p.series().lex_terms();
  return apply_range(terms.begin(), terms.end(), 0, args, p.symbols(), target.truncated(len));
}

LieElement op_apply(const OperatorPoly& p, const std::vector<LieElement>& args, const LieElement& target, int order) {
  require_order(order);
  std::vector<AssocSeries> ex;
  for (const auto& a : args) {
    require_degree(a, 0, "op_apply");
    ex.push_back(expand_assoc(a, order));
  }
  if (static_cast<int>(args.size()) != p.symbols()) throw Error("op_apply: arity mismatch");
  return dynkin_projection(op_apply(p, ex, expand_assoc(target, order)));
}

LieElement path_bch(const Path& path, int order) {
  std::vector<LieElement> signed_edges;
  for (const auto& [e, s] : path.edges) {
    if (s != 1 && s != -1) throw Error("path edge sign must be +1 or -1");
    signed_edges.push_back(s > 0 ? e : -e);
  }
  return bch_multi(signed_edges, order);
}

}  // namespace dgla
