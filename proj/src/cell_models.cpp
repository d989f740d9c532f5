#include "dgla/cell_models.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace dgla {

namespace {

std::string indexed(const std::string& prefix, int i) { return prefix + std::to_string(i); }

// 1-based index reduced mod n into 1..n.
int wrap(int i, int n) { return ((i - 1) % n + n) % n + 1; }

AssocSeries mc_diff(const AssocSeries& p) { return commutator(p, p) * Rational(-1, 2); }

std::vector<AssocSeries> reversed_path(const std::vector<AssocSeries>& xs) {
  std::vector<AssocSeries> out;
  for (auto it = xs.rbegin(); it != xs.rend(); ++it) out.push_back(-*it);
  return out;
}

std::vector<AssocSeries> concat(std::vector<AssocSeries> a, const std::vector<AssocSeries>& b) {
  a.insert(a.end(), b.begin(), b.end());
  return a;
}

void require_order(int order) {
  if (order < 0) throw Error("order must be non-negative");
  if (order + 1 > kMaxWordLength) throw Error("order exceeds supported maximum");
}

LieElement sum_of(const std::vector<std::pair<Generator, int>>& terms) {
  LieElement out;
  for (const auto& [g, s] : terms) out += LieElement::generator(g) * Rational(s);
  return out;
}

/// Vertices with MC differentials and edges with interval differentials.
void add_skeleton(Model& m, const std::vector<Generator>& vertices,
                  const std::vector<std::tuple<Generator, Generator, Generator>>& edges) {
  for (Generator v : vertices) {
    m.set_diff(v, mc_diff(m.gen(v)));
    m.set_closure(v, {v});
  }
  for (const auto& [e, from, to] : edges) {
    m.set_diff(e, interval_diff(m.gen(e), m.gen(from), m.gen(to)));
    m.set_closure(e, {from, to});
    m.set_boundary(e, sum_of({{to, 1}, {from, -1}}));
  }
}

/// BCH(e_j, -e_{j+1}) for j = 1..n-1.
std::vector<AssocSeries> banana_loops(const std::vector<AssocSeries>& e) {
  std::vector<AssocSeries> y;
  for (std::size_t j = 0; j + 1 < e.size(); ++j) y.push_back(bch2(e[j], -e[j + 1]));
  return y;
}

struct BananaGens {
  Generator a, b, h;
  std::vector<Generator> e, f;
};

BananaGens banana_generators(int n) {
  if (n < 2) throw Error("banana needs n >= 2");
  BananaGens g;
  g.a = Generator::make("a", -1);
  g.b = Generator::make("b", -1);
  for (int i = 1; i <= n; ++i) g.e.push_back(Generator::make(indexed("e", i), 0));
  for (int i = 1; i <= n; ++i) g.f.push_back(Generator::make(indexed("f", i), 1));
  g.h = Generator::make("h", 2);
  return g;
}

Model banana_skeleton(const std::string& name, const BananaGens& g, int order) {
  std::vector<Generator> all{g.a, g.b};
  all.insert(all.end(), g.e.begin(), g.e.end());
  all.insert(all.end(), g.f.begin(), g.f.end());
  all.push_back(g.h);
  Model m(name, all, order);
  std::vector<std::tuple<Generator, Generator, Generator>> edges;
  for (Generator e : g.e) edges.emplace_back(e, g.a, g.b);
  add_skeleton(m, {g.a, g.b}, edges);
  const int n = static_cast<int>(g.e.size());
  std::vector<std::pair<Generator, int>> faces;
  for (int i = 1; i <= n; ++i) {
    const Generator f = g.f[static_cast<std::size_t>(i - 1)];
    const Generator ei = g.e[static_cast<std::size_t>(i - 1)];
    const Generator ej = g.e[static_cast<std::size_t>(wrap(i + 1, n) - 1)];
    m.set_closure(f, {g.a, g.b, ei, ej});
    m.set_boundary(f, sum_of({{ei, 1}, {ej, -1}}));
    faces.emplace_back(f, 1);
  }
  m.set_closure(g.h, all);
  m.set_boundary(g.h, sum_of(faces));
  return m;
}

std::vector<AssocSeries> gens_of(const Model& m, const std::vector<Generator>& gs) {
  std::vector<AssocSeries> out;
  for (Generator g : gs) out.push_back(m.gen(g));
  return out;
}

}  // namespace

// ---------------------------------------------------------------- interval, bi-gon, square

Model interval_model(int order) {
  require_order(order);
  const Generator a = Generator::make("a", -1), b = Generator::make("b", -1), e = Generator::make("e", 0);
  Model m("interval", {a, b, e}, order);
  add_skeleton(m, {a, b}, {{e, a, b}});
  return m;
}

SquareFace square_face_diff(const Differential& d, Generator face, const std::vector<AssocSeries>& chain_p,
                            const std::vector<AssocSeries>& chain_q, const AssocSeries& start) {
  int len = start.max_length();
  for (const auto& x : chain_p) len = std::min(len, x.max_length());
  for (const auto& x : chain_q) len = std::min(len, x.max_length());
  const AssocSeries p = bch_multi(chain_p, len);
  const AssocSeries q = bch_multi(chain_q, len);
  if (flow(p, start, d) != flow(q, start, d)) throw Error("square face chains do not share their end point");
  SquareFace out;
  out.diagonal = mu2(p, q);
  const AssocSeries half = out.diagonal * Rational(1, 2);
  out.centre = flow(half, start, d);
  std::vector<AssocSeries> loop{-half};
  loop = concat(loop, chain_p);
  loop = concat(loop, reversed_path(chain_q));
  loop.push_back(half);
  out.diff = bch_multi(loop, len) - commutator(out.centre, AssocSeries::generator(face, len));
  return out;
}

SquareFaceElements square_face_diff(const Model& m, Generator face, const std::vector<LieElement>& chain_p,
                                    const std::vector<LieElement>& chain_q, const LieElement& start, int order) {
  if (order > m.max_order()) throw OrderCapError("order exceeds model maxOrder");
  auto lift = [&](const std::vector<LieElement>& xs) {
    std::vector<AssocSeries> out;
    for (const auto& x : xs) {
      if (!x.is_zero() && x.degree() != 0) throw DegreeError("square face edges must have degree 0");
      out.push_back(expand_assoc(x, order));
    }
    return out;
  };
  if (!start.is_zero() && start.degree() != -1) throw DegreeError("square face start must have degree -1");
  const SquareFace s = square_face_diff(m.differential(), face, lift(chain_p), lift(chain_q), expand_assoc(start, order));
  return {dynkin_projection(s.diff), dynkin_projection(s.centre), dynkin_projection(s.diagonal)};
}

Model bigon_model(int order) {
  require_order(order);
  const Generator a = Generator::make("a", -1), b = Generator::make("b", -1);
  const Generator e1 = Generator::make("e1", 0), e2 = Generator::make("e2", 0);
  const Generator f = Generator::make("f", 1);
  Model m("bigon", {a, b, e1, e2, f}, order);
  add_skeleton(m, {a, b}, {{e1, a, b}, {e2, a, b}});
  const SquareFace s = square_face_diff(m.differential(), f, {m.gen(e1)}, {m.gen(e2)}, m.gen(a));
  m.set_diff(f, s.diff);
  m.set_closure(f, {a, b, e1, e2});
  m.set_boundary(f, sum_of({{e1, 1}, {e2, -1}}));
  return m;
}

// ---------------------------------------------------------------- P polynomials

std::vector<OperatorPoly> banana_P(int n, int order) {
  if (n < 2) throw Error("banana_P needs n >= 2");
  require_order(order);
  const int k = n - 1;
  if (order == 0) return std::vector<OperatorPoly>(static_cast<std::size_t>(n), OperatorPoly::one(k, 0));
  const OperatorPoly q = extract_Q(order);
  std::vector<OperatorPoly> x;  // x[1..n]
  x.emplace_back(k, order);
  for (int j = 1; j <= k; ++j) x.push_back(OperatorPoly::variable(k, j, order));
  x.push_back(-bch_multi(std::vector<OperatorPoly>(x.begin() + 1, x.begin() + n)));
  auto bch_range = [&](int from, int to) {
    return bch_multi(std::vector<OperatorPoly>(x.begin() + from, x.begin() + to + 1));
  };
  auto Q = [&](const OperatorPoly& u, const OperatorPoly& v) { return q.substitute({u, v}); };
  const Rational w(1, 2 * n);
  std::vector<OperatorPoly> p;
  for (int i = 1; i <= n; ++i) {
    OperatorPoly pi = OperatorPoly::one(k, order);
    const OperatorPoly& xi = x[static_cast<std::size_t>(i)];
    for (int j = (i == n ? 2 : 1); j <= i - 1; ++j) {
      pi += Q(bch_range(j, i - 1), xi) * w;
      pi += Q(bch_range(j, i), -xi) * w;
    }
    for (int j = i + 1; j <= n - 1; ++j) {
      pi += Q(-bch_range(i, j), xi) * w;
      pi += Q(-bch_range(i + 1, j), -xi) * w;
    }
    p.push_back(pi);
  }
  return p;
}

std::vector<OperatorPoly> banana_P_unaveraged(int n, int order) {
  if (n < 2) throw Error("banana_P needs n >= 2");
  require_order(order);
  const int k = n - 1;
  if (order == 0) return std::vector<OperatorPoly>(static_cast<std::size_t>(n), OperatorPoly::one(k, 0));
  const OperatorPoly q = extract_Q(order);
  std::vector<OperatorPoly> x;
  for (int j = 1; j <= k; ++j) x.push_back(OperatorPoly::variable(k, j, order));
  std::vector<OperatorPoly> p;
  for (int i = 1; i <= n; ++i) {
    OperatorPoly pi = OperatorPoly::one(k, order);
    if (i > 1 && i < n) {
      pi += q.substitute({bch_multi(std::vector<OperatorPoly>(x.begin(), x.begin() + i - 1)),
                          x[static_cast<std::size_t>(i - 1)]});
    }
    p.push_back(pi);
  }
  return p;
}

Report check_loop_identity(const std::vector<OperatorPoly>& p, int order) {
  Report r{"loop_identity", true, {}};
  const int n = static_cast<int>(p.size());
  if (n < 2) throw Error("the loop identity needs n >= 2");
  const int len = order + 1;
  std::vector<AssocSeries> xs;
  for (int j = 1; j < n; ++j) xs.push_back(AssocSeries::generator(Generator::make(indexed("#x", j), 0), len));
  AssocSeries lhs(len);
  for (int i = 0; i + 1 < n; ++i) lhs += op_apply(p[static_cast<std::size_t>(i)], xs, xs[static_cast<std::size_t>(i)]);
  const AssocSeries rhs = op_apply(p.back(), xs, bch_multi(xs, len));
  const AssocSeries res = lhs - rhs;
  if (!res.is_zero()) r.fail(describe_residual("P", res));
  return r;
}

namespace {

std::vector<OperatorPoly> symbols_of(int k, int order) {
  std::vector<OperatorPoly> x;
  for (int j = 1; j <= k; ++j) x.push_back(OperatorPoly::variable(k, j, order));
  return x;
}

}  // namespace

Report check_cyclic_condition(const std::vector<OperatorPoly>& p) {
  Report r{"cyclic", true, {}};
  const int n = static_cast<int>(p.size());
  const int k = n - 1;
  const int order = p.front().order();
  std::vector<OperatorPoly> x = symbols_of(k, order);
  std::vector<OperatorPoly> images(x.begin() + 1, x.end());
  images.push_back(-bch_multi(x));
  for (int i = 1; i <= n; ++i) {
    const OperatorPoly lhs = p[static_cast<std::size_t>(wrap(i + 1, n) - 1)];
    const OperatorPoly rhs = p[static_cast<std::size_t>(i - 1)].substitute(images);
    if (!(lhs == rhs)) r.fail(describe_residual(indexed("P", wrap(i + 1, n)), lhs.series() - rhs.series()));
  }
  return r;
}

Report check_reversal_condition(const std::vector<OperatorPoly>& p) {
  Report r{"reversal", true, {}};
  const int n = static_cast<int>(p.size());
  const int k = n - 1;
  const int order = p.front().order();
  std::vector<OperatorPoly> x = symbols_of(k, order);
  std::vector<OperatorPoly> images;
  for (int j = k; j >= 1; --j) images.push_back(-x[static_cast<std::size_t>(j - 1)]);
  for (int i = 1; i <= n; ++i) {
    const int target = wrap(n - i, n);
    const OperatorPoly lhs = p[static_cast<std::size_t>(target - 1)];
    const OperatorPoly rhs = p[static_cast<std::size_t>(i - 1)].substitute(images);
    if (!(lhs == rhs)) r.fail(describe_residual(indexed("P", target), lhs.series() - rhs.series()));
  }
  return r;
}

// ---------------------------------------------------------------- banana models

Model banana_model_at_a(int n, int order) {
  require_order(order);
  const BananaGens g = banana_generators(n);
  Model m = banana_skeleton("banana-at-a", g, order);
  const AssocSeries A = m.gen(g.a);
  const std::vector<AssocSeries> e = gens_of(m, g.e);
  for (int i = 1; i <= n; ++i) {
    const Generator f = g.f[static_cast<std::size_t>(i - 1)];
    const AssocSeries loop = bch2(e[static_cast<std::size_t>(i - 1)], -e[static_cast<std::size_t>(wrap(i + 1, n) - 1)]);
    m.set_diff(f, loop - commutator(A, m.gen(f)));
  }
  const std::vector<OperatorPoly> p = banana_P(n, order);
  const std::vector<AssocSeries> y = banana_loops(e);
  AssocSeries dh(m.max_length());
  for (int i = 0; i < n; ++i) dh += op_apply(p[static_cast<std::size_t>(i)], y, m.gen(g.f[static_cast<std::size_t>(i)]));
  m.set_diff(g.h, dh - commutator(A, m.gen(g.h)));
  return m;
}

Model banana_model_symmetric(int n, int order) {
  require_order(order);
  const BananaGens g = banana_generators(n);
  Model m = banana_skeleton("banana-symmetric", g, order);
  const AssocSeries A = m.gen(g.a);
  const std::vector<AssocSeries> e = gens_of(m, g.e);
  AssocSeries s(m.max_length());
  const std::vector<OperatorPoly> p = banana_P(n, order);
  const std::vector<AssocSeries> y = banana_loops(e);
  for (int i = 1; i <= n; ++i) {
    const Generator f = g.f[static_cast<std::size_t>(i - 1)];
    const SquareFace face = square_face_diff(m.differential(), f, {e[static_cast<std::size_t>(i - 1)]},
                                             {e[static_cast<std::size_t>(wrap(i + 1, n) - 1)]}, A);
    m.set_diff(f, face.diff);
    s += op_apply(p[static_cast<std::size_t>(i - 1)], y, exp_ad(face.diagonal * Rational(1, 2), m.gen(f)));
  }
  const AssocSeries v = n == 2 ? mu2(e[0], e[1]) : mun_two_bracket(e);
  const AssocSeries centre = flow(v * Rational(1, 2), A, m.differential());
  m.set_diff(g.h, exp_ad(v * Rational(-1, 2), s) - commutator(centre, m.gen(g.h)));
  if (n >= 3) m.set_symmetry_cap(3);
  return m;
}

BananaSymmetry parse_banana_symmetry(const std::string& name) {
  if (name == "tau") return BananaSymmetry::Tau;
  if (name == "sigma") return BananaSymmetry::Sigma;
  if (name == "iota") return BananaSymmetry::Iota;
  throw Error("unknown banana symmetry '" + name + "'");
}

Morphism banana_symmetry(std::shared_ptr<const Model> m, BananaSymmetry kind) {
  int n = 0;
  while (true) {
    const std::string name = indexed("e", n + 1);
    bool found = false;
    for (Generator g : m->generators()) found = found || g.name() == name;
    if (!found) break;
    ++n;
  }
  if (n < 2) throw Error("banana_symmetry: model is not a banana");
  Morphism phi(m, m);
  const Generator a = m->generator("a"), b = m->generator("b"), h = m->generator("h");
  auto E = [&](int i) { return m->gen(m->generator(indexed("e", wrap(i, n)))); };
  auto F = [&](int i) { return m->gen(m->generator(indexed("f", wrap(i, n)))); };
  for (int i = 1; i <= n; ++i) {
    const Generator ei = m->generator(indexed("e", i));
    const Generator fi = m->generator(indexed("f", i));
    switch (kind) {
      case BananaSymmetry::Tau:
        phi.assign(ei, E(i + 1));
        phi.assign(fi, F(i + 1));
        break;
      case BananaSymmetry::Sigma:
        phi.assign(ei, E(n - i));
        phi.assign(fi, -F(n - i - 1));
        break;
      case BananaSymmetry::Iota:
        phi.assign(ei, -E(i));
        phi.assign(fi, -F(i));
        break;
    }
  }
  const bool swap = kind == BananaSymmetry::Iota;
  phi.assign(a, m->gen(swap ? b : a));
  phi.assign(b, m->gen(swap ? a : b));
  phi.assign(h, kind == BananaSymmetry::Tau ? m->gen(h) : -m->gen(h));
  return phi;
}

// ---------------------------------------------------------------- polyhedra

PolyhedronSpec PolyhedronSpec::from_json(const json& j) {
  PolyhedronSpec s;
  s.name = j.value("name", std::string("polyhedron"));
  s.cell = j.value("cell", std::string("h"));
  s.a = j.at("a").get<std::string>();
  s.b = j.at("b").get<std::string>();
  s.vertices = j.at("vertices").get<std::vector<std::string>>();
  for (const auto& e : j.at("edges")) {
    s.edges.push_back({e.at("name").get<std::string>(), e.at("from").get<std::string>(), e.at("to").get<std::string>()});
  }
  s.chains = j.at("chains").get<std::vector<std::vector<std::string>>>();
  for (const auto& f : j.at("faces")) {
    Face face;
    face.name = f.at("name").get<std::string>();
    face.delta = f.at("delta").get<std::vector<std::string>>();
    face.delta_prime = f.at("deltaPrime").get<std::vector<std::string>>();
    face.sign = f.value("sign", 1);
    if (face.sign != 1 && face.sign != -1) throw Error("face sign must be +1 or -1");
    s.faces.push_back(std::move(face));
  }
  return s;
}

json PolyhedronSpec::to_json() const {
  json edges_j = json::array();
  for (const auto& e : edges) edges_j.push_back({{"name", e.name}, {"from", e.from}, {"to", e.to}});
  json faces_j = json::array();
  for (const auto& f : faces) {
    faces_j.push_back({{"name", f.name}, {"delta", f.delta}, {"deltaPrime", f.delta_prime}, {"sign", f.sign}});
  }
  return json{{"name", name}, {"cell", cell},   {"a", a},           {"b", b},
              {"vertices", vertices}, {"edges", edges_j}, {"chains", chains}, {"faces", faces_j}};
}

namespace {

struct Shelling {
  std::vector<std::size_t> alpha_len;  // common prefix length of chains i, i+1
};

Shelling validate(const PolyhedronSpec& s) {
  std::map<std::string, const PolyhedronSpec::Edge*> edges;
  std::set<std::string> vertices(s.vertices.begin(), s.vertices.end());
  if (vertices.size() != s.vertices.size()) throw ShellingError("duplicate vertex");
  if (!vertices.count(s.a) || !vertices.count(s.b)) throw ShellingError("a and b must be vertices");
  for (const auto& e : s.edges) {
    if (!vertices.count(e.from) || !vertices.count(e.to)) throw ShellingError("edge '" + e.name + "' has unknown endpoint");
    if (!edges.emplace(e.name, &e).second) throw ShellingError("duplicate edge '" + e.name + "'");
  }
  const std::size_t n = s.chains.size();
  if (n < 2) throw ShellingError("a shelling needs at least two chains");
  if (s.faces.size() != n) throw ShellingError("one face per consecutive pair of chains is required");
  auto edge = [&](const std::string& name) -> const PolyhedronSpec::Edge& {
    auto it = edges.find(name);
    if (it == edges.end()) throw ShellingError("unknown edge '" + name + "'");
    return *it->second;
  };
  for (std::size_t i = 0; i < n; ++i) {
    const auto& c = s.chains[i];
    if (c.empty()) throw ShellingError("empty chain");
    std::set<std::string> seen{s.a};
    std::string at = s.a;
    for (const auto& name : c) {
      const auto& e = edge(name);
      if (e.from != at) throw ShellingError("chain " + std::to_string(i + 1) + " is not a connected path");
      at = e.to;
      if (!seen.insert(at).second) throw ShellingError("chain " + std::to_string(i + 1) + " intersects itself");
    }
    if (at != s.b) throw ShellingError("chain " + std::to_string(i + 1) + " does not end at b");
  }
  Shelling out;
  for (std::size_t i = 0; i < n; ++i) {
    const auto& c = s.chains[i];
    const auto& d = s.chains[(i + 1) % n];
    std::size_t pre = 0;
    while (pre < c.size() && pre < d.size() && c[pre] == d[pre]) ++pre;
    std::size_t suf = 0;
    while (suf < c.size() - pre && suf < d.size() - pre && c[c.size() - 1 - suf] == d[d.size() - 1 - suf]) ++suf;
    const std::vector<std::string> delta(c.begin() + static_cast<long>(pre), c.end() - static_cast<long>(suf));
    const std::vector<std::string> delta_prime(d.begin() + static_cast<long>(pre), d.end() - static_cast<long>(suf));
    const auto& face = s.faces[i];
    if (delta != face.delta || delta_prime != face.delta_prime) {
      throw ShellingError("face '" + face.name + "' does not match the difference of chains " + std::to_string(i + 1) +
                          " and " + std::to_string((i + 1) % n + 1));
    }
    if (delta.empty() || delta_prime.empty()) throw ShellingError("face '" + face.name + "' is degenerate");
    out.alpha_len.push_back(pre);
  }
  return out;
}

}  // namespace

Model polyhedron_model(const PolyhedronSpec& spec, int order) {
  require_order(order);
  const Shelling shelling = validate(spec);
  const int n = static_cast<int>(spec.chains.size());
  std::map<std::string, Generator> by_name;
  std::vector<Generator> all;
  auto add = [&](const std::string& name, int degree) {
    const Generator g = Generator::make(name, degree);
    if (!by_name.emplace(name, g).second) throw ShellingError("name '" + name + "' used twice");
    all.push_back(g);
    return g;
  };
  std::vector<Generator> vertices;
  for (const auto& v : spec.vertices) vertices.push_back(add(v, -1));
  std::vector<std::tuple<Generator, Generator, Generator>> edges;
  for (const auto& e : spec.edges) edges.emplace_back(add(e.name, 0), by_name.at(e.from), by_name.at(e.to));
  std::vector<Generator> faces;
  for (const auto& f : spec.faces) faces.push_back(add(f.name, 1));
  const Generator h = add(spec.cell, 2);

  Model m(spec.name, all, order);
  add_skeleton(m, vertices, edges);
  std::map<std::string, const PolyhedronSpec::Edge*> edge_info;
  for (const auto& e : spec.edges) edge_info.emplace(e.name, &e);
  auto path = [&](const std::vector<std::string>& names) {
    std::vector<AssocSeries> out;
    for (const auto& name : names) out.push_back(m.gen(by_name.at(name)));
    return out;
  };

  std::vector<std::pair<Generator, int>> cell_boundary;
  for (int i = 0; i < n; ++i) {
    const auto& face = spec.faces[static_cast<std::size_t>(i)];
    const Generator g = faces[static_cast<std::size_t>(i)];
    const Generator p = by_name.at(edge_info.at(face.delta.front())->from);
    const AssocSeries loop = bch_multi(concat(path(face.delta), reversed_path(path(face.delta_prime))), m.max_length());
    m.set_diff(g, loop * Rational(face.sign) - commutator(m.gen(p), m.gen(g)));
    std::vector<Generator> closure;
    std::vector<std::pair<Generator, int>> boundary;
    for (const auto* side : {&face.delta, &face.delta_prime}) {
      const int s = side == &face.delta ? face.sign : -face.sign;
      for (const auto& name : *side) {
        const auto* e = edge_info.at(name);
        closure.insert(closure.end(), {by_name.at(name), by_name.at(e->from), by_name.at(e->to)});
        boundary.emplace_back(by_name.at(name), s);
      }
    }
    m.set_closure(g, closure);
    m.set_boundary(g, sum_of(boundary));
    cell_boundary.emplace_back(g, face.sign);
  }

  std::vector<AssocSeries> gammas;
  for (const auto& c : spec.chains) gammas.push_back(bch_multi(path(c), m.max_length()));
  const std::vector<AssocSeries> y = banana_loops(gammas);
  const std::vector<OperatorPoly> p = banana_P(n, order);
  AssocSeries dh(m.max_length());
  for (int i = 0; i < n; ++i) {
    const auto& chain = spec.chains[static_cast<std::size_t>(i)];
    const std::vector<std::string> alpha(chain.begin(), chain.begin() + static_cast<long>(shelling.alpha_len[static_cast<std::size_t>(i)]));
    const AssocSeries face = m.gen(faces[static_cast<std::size_t>(i)]) * Rational(spec.faces[static_cast<std::size_t>(i)].sign);
    const AssocSeries moved = exp_ad(bch_multi(path(alpha), m.max_length()), face);
    dh += op_apply(p[static_cast<std::size_t>(i)], y, moved);
  }
  m.set_diff(h, dh - commutator(m.gen(by_name.at(spec.a)), m.gen(h)));
  m.set_closure(h, all);
  m.set_boundary(h, sum_of(cell_boundary));
  return m;
}

PolyhedronSpec banana_shelling(int n) {
  if (n < 2) throw Error("banana needs n >= 2");
  PolyhedronSpec s;
  s.name = "banana-shelling";
  s.a = "a";
  s.b = "b";
  s.vertices = {"a", "b"};
  for (int i = 1; i <= n; ++i) {
    s.edges.push_back({indexed("e", i), "a", "b"});
    s.chains.push_back({indexed("e", i)});
  }
  for (int i = 1; i <= n; ++i) s.faces.push_back({indexed("f", i), {indexed("e", i)}, {indexed("e", wrap(i + 1, n))}, 1});
  return s;
}

// ---------------------------------------------------------------- cube

namespace {

// Directions d1, d2, d3 from a; a1 = d1+d2, a2 = d1, a3 = d1+d3, a4 = d3,
// a5 = d2+d3, a6 = d2, b = d1+d2+d3.
const std::vector<PolyhedronSpec::Edge> kCubeEdges = {
    {"e1", "a", "a2"},   {"e2", "a", "a6"},   {"e3", "a", "a4"},   {"eb1", "a5", "b"}, {"eb2", "a3", "b"},
    {"eb3", "a1", "b"},  {"f1", "a2", "a1"},  {"f2", "a2", "a3"},  {"f3", "a4", "a3"}, {"f4", "a4", "a5"},
    {"f5", "a6", "a5"},  {"f6", "a6", "a1"},
};

const std::vector<std::vector<std::string>> kCubeChains = {
    {"e3", "f4", "eb1"}, {"e2", "f5", "eb1"}, {"e2", "f6", "eb3"},
    {"e1", "f1", "eb3"}, {"e1", "f2", "eb2"}, {"e3", "f3", "eb2"},
};

// Cube faces as (name, chain P, chain Q); the boundary is P - Q.
struct CubeFace {
  std::string name;
  std::vector<std::string> p, q;
};
const std::vector<CubeFace> kCubeFaces = {
    {"g1", {"e2", "f5"}, {"e3", "f4"}},   {"g2", {"e1", "f2"}, {"e3", "f3"}},   {"g3", {"e1", "f1"}, {"e2", "f6"}},
    {"gb1", {"f1", "eb3"}, {"f2", "eb2"}}, {"gb2", {"f6", "eb3"}, {"f5", "eb1"}}, {"gb3", {"f3", "eb2"}, {"f4", "eb1"}},
};

// Banana face i lands on this cube face with this sign.
const std::vector<std::pair<std::string, int>> kCubeFaceMap = {
    {"g1", -1}, {"gb2", -1}, {"g3", -1}, {"gb1", 1}, {"g2", 1}, {"gb3", 1},
};

}  // namespace

PolyhedronSpec cube_shelling() {
  PolyhedronSpec s;
  s.name = "cube";
  s.a = "a";
  s.b = "b";
  s.vertices = {"a", "b", "a1", "a2", "a3", "a4", "a5", "a6"};
  s.edges = kCubeEdges;
  s.chains = kCubeChains;
  const std::size_t n = kCubeChains.size();
  for (std::size_t i = 0; i < n; ++i) {
    const auto& c = kCubeChains[i];
    const auto& d = kCubeChains[(i + 1) % n];
    std::size_t pre = 0;
    while (c[pre] == d[pre]) ++pre;
    std::size_t suf = 0;
    while (c[c.size() - 1 - suf] == d[d.size() - 1 - suf]) ++suf;
    s.faces.push_back({kCubeFaceMap[i].first,
                       {c.begin() + static_cast<long>(pre), c.end() - static_cast<long>(suf)},
                       {d.begin() + static_cast<long>(pre), d.end() - static_cast<long>(suf)},
                       kCubeFaceMap[i].second});
  }
  return s;
}

CubeMorphism cube_morphism(int order) {
  require_order(order);
  auto x6 = std::make_shared<Model>(banana_model_symmetric(6, order));

  std::map<std::string, Generator> by_name;
  std::vector<Generator> all;
  auto add = [&](const std::string& name, int degree) {
    const Generator g = Generator::make(name, degree);
    by_name.emplace(name, g);
    all.push_back(g);
    return g;
  };
  std::vector<Generator> vertices;
  for (const char* v : {"a", "b", "a1", "a2", "a3", "a4", "a5", "a6"}) vertices.push_back(add(v, -1));
  std::vector<std::tuple<Generator, Generator, Generator>> edges;
  for (const auto& e : kCubeEdges) edges.emplace_back(add(e.name, 0), by_name.at(e.from), by_name.at(e.to));
  for (const auto& f : kCubeFaces) add(f.name, 1);
  const Generator h = add("h", 2);

  auto cube = std::make_shared<Model>("cube", all, order);
  add_skeleton(*cube, vertices, edges);
  std::map<std::string, std::string> edge_from;
  for (const auto& e : kCubeEdges) edge_from[e.name] = e.from;
  auto path = [&](const std::vector<std::string>& names) {
    std::vector<AssocSeries> out;
    for (const auto& name : names) out.push_back(cube->gen(by_name.at(name)));
    return out;
  };

  std::map<std::string, AssocSeries> diagonals;
  std::vector<std::pair<Generator, int>> cell_boundary;
  for (const auto& f : kCubeFaces) {
    const Generator g = by_name.at(f.name);
    const Generator start = by_name.at(edge_from.at(f.p.front()));
    const SquareFace s = square_face_diff(cube->differential(), g, path(f.p), path(f.q), cube->gen(start));
    cube->set_diff(g, s.diff);
    diagonals.emplace(f.name, s.diagonal);
    std::vector<Generator> closure;
    std::vector<std::pair<Generator, int>> boundary;
    for (const auto& [side, sign] : {std::pair{&f.p, 1}, std::pair{&f.q, -1}}) {
      for (const auto& name : *side) {
        const auto& e = *std::find_if(kCubeEdges.begin(), kCubeEdges.end(), [&](const auto& x) { return x.name == name; });
        closure.insert(closure.end(), {by_name.at(name), by_name.at(e.from), by_name.at(e.to)});
        boundary.emplace_back(by_name.at(name), sign);
      }
    }
    cube->set_closure(g, closure);
    cube->set_boundary(g, sum_of(boundary));
  }

  CubeMorphism out{x6, cube, Morphism(x6, cube), {}, {}, {}};
  Morphism& phi = out.phi;
  phi.assign(x6->generator("a"), cube->gen(by_name.at("a")));
  phi.assign(x6->generator("b"), cube->gen(by_name.at("b")));
  const int n = static_cast<int>(kCubeChains.size());
  std::vector<AssocSeries> gammas;
  for (const auto& c : kCubeChains) gammas.push_back(bch_multi(path(c), cube->max_length()));
  for (int i = 1; i <= n; ++i) phi.assign(x6->generator(indexed("e", i)), gammas[static_cast<std::size_t>(i - 1)]);

  for (int i = 1; i <= n; ++i) {
    const auto& c = kCubeChains[static_cast<std::size_t>(i - 1)];
    const auto& d = kCubeChains[static_cast<std::size_t>(wrap(i + 1, n) - 1)];
    std::size_t pre = 0;
    while (c[pre] == d[pre]) ++pre;
    std::size_t suf = 0;
    while (c[c.size() - 1 - suf] == d[d.size() - 1 - suf]) ++suf;
    const std::vector<std::string> delta(c.begin() + static_cast<long>(pre), c.end() - static_cast<long>(suf));
    const std::vector<std::string> delta_prime(d.begin() + static_cast<long>(pre), d.end() - static_cast<long>(suf));
    // Match the banana face boundary delta - delta' against a cube face.
    std::string target;
    int sign = 0;
    for (const auto& f : kCubeFaces) {
      if (f.p == delta && f.q == delta_prime) target = f.name, sign = 1;
      if (f.p == delta_prime && f.q == delta) target = f.name, sign = -1;
    }
    const auto& expected = kCubeFaceMap[static_cast<std::size_t>(i - 1)];
    if (target != expected.first || sign != expected.second) {
      throw ShellingError("cube face orientation data disagrees with the boundary of banana face " + std::to_string(i));
    }
    const AssocSeries alpha = bch_multi(path({c.begin(), c.begin() + static_cast<long>(pre)}), cube->max_length());
    const AssocSeries u = mu2(gammas[static_cast<std::size_t>(i - 1)], gammas[static_cast<std::size_t>(wrap(i + 1, n) - 1)]);
    const AssocSeries conj = bch_multi({diagonals.at(target) * Rational(-1, 2), -alpha, u * Rational(1, 2)}, cube->max_length());
    phi.assign(x6->generator(indexed("f", i)), exp_ad(-conj, cube->gen(by_name.at(target))) * Rational(sign));
    out.face_images.push_back(target);
    out.signs.push_back(sign);
    out.conjugators.push_back(dynkin_projection(conj));
    cell_boundary.emplace_back(by_name.at(target), sign);
  }
  phi.assign(x6->generator("h"), cube->gen(h));
  cube->set_diff(h, phi.apply(x6->diff_series(x6->generator("h")), cube->max_length()));
  cube->set_closure(h, all);
  cube->set_boundary(h, sum_of(cell_boundary));
  return out;
}

Model cube_model(int order) { return *cube_morphism(order).target; }

}  // namespace dgla
