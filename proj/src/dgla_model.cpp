#include "dgla/dgla_model.hpp"

#include <algorithm>
#include <set>

#include "dgla/series_calc.hpp"

namespace dgla {

namespace {

void require_order(const Model& m, int order) {
  if (order < 0) throw Error("order must be non-negative");
  if (order > m.max_order()) {
    throw OrderCapError("order " + std::to_string(order) + " exceeds model maxOrder " + std::to_string(m.max_order()));
  }
}

void require_homogeneous(const LieElement& x, const char* what) {
  if (!x.is_homogeneous()) throw DegreeError(std::string(what) + ": element is not homogeneous");
}

std::set<Generator> letters(const AssocSeries& s) {
  std::set<Generator> out;
  for (const auto& [w, c] : s.terms()) {
    for (int i = 0; i < w.size(); ++i) out.insert(w[i]);
  }
  return out;
}

}  // namespace

// ---------------------------------------------------------------- Model

Model::Model(std::string name, std::vector<Generator> generators, int max_order)
    : name_(std::move(name)), generators_(std::move(generators)), max_order_(max_order) {
  if (max_order < 0) throw Error("maxOrder must be non-negative");
  if (max_order + 1 > kMaxWordLength) throw Error("maxOrder exceeds supported maximum");
  std::set<std::string> names;
  for (Generator g : generators_) {
    if (!names.insert(g.name()).second) throw Error("duplicate generator '" + g.name() + "'");
  }
}

bool Model::contains(Generator g) const {
  return std::find(generators_.begin(), generators_.end(), g) != generators_.end();
}

Generator Model::generator(const std::string& name) const {
  for (Generator g : generators_) {
    if (g.name() == name) return g;
  }
  throw Error("model '" + name_ + "' has no generator '" + name + "'");
}

void Model::set_diff(Generator g, const AssocSeries& value) {
  if (!contains(g)) throw Error("set_diff: '" + g.name() + "' is not a generator of the model");
  if (!value.has_degree(g.degree() - 1)) throw DegreeError("differential of '" + g.name() + "' has the wrong degree");
  for (Generator l : letters(value)) {
    if (!contains(l)) throw Error("differential of '" + g.name() + "' mentions foreign letter '" + l.name() + "'");
  }
  differential_.set(g, value.truncated(max_length()));
}

void Model::set_diff(Generator g, const LieElement& value) { set_diff(g, lift(value)); }

LieElement Model::diff(Generator g) const { return dynkin_projection(diff_series(g)); }

void Model::set_closure(Generator g, std::vector<Generator> cells) {
  if (std::find(cells.begin(), cells.end(), g) == cells.end()) cells.push_back(g);
  for (Generator c : cells) {
    if (!contains(c)) throw Error("closure of '" + g.name() + "' mentions foreign generator '" + c.name() + "'");
  }
  std::sort(cells.begin(), cells.end(), [](Generator x, Generator y) { return x.name() < y.name(); });
  cells.erase(std::unique(cells.begin(), cells.end()), cells.end());
  closure_[g] = std::move(cells);
}

const std::vector<Generator>& Model::closure(Generator g) const {
  auto it = closure_.find(g);
  if (it == closure_.end()) throw Error("no closure recorded for '" + g.name() + "'");
  return it->second;
}

void Model::set_boundary(Generator g, const LieElement& boundary) {
  if (boundary.max_bracket_count() > 0) throw Error("boundary of '" + g.name() + "' must be bracket-free");
  boundary_[g] = boundary;
}

const LieElement& Model::boundary(Generator g) const {
  static const LieElement zero;
  auto it = boundary_.find(g);
  return it == boundary_.end() ? zero : it->second;
}

json Model::to_json() const {
  json j = generators_to_json(generators_);
  j["name"] = name_;
  json diff = json::object();
  json closure = json::object();
  json boundary = json::object();
  for (Generator g : generators_) {
    if (differential_.defines(g)) diff[g.name()] = element_to_json(this->diff(g));
    if (closure_.count(g)) {
      json cells = json::array();
      for (Generator c : closure_.at(g)) cells.push_back(c.name());
      closure[g.name()] = cells;
    }
    if (boundary_.count(g)) boundary[g.name()] = element_to_json(boundary_.at(g));
  }
  j["diff"] = diff;
  j["closure"] = closure;
  j["boundary"] = boundary;
  j["maxOrder"] = max_order_;
  if (symmetry_cap_) j["symmetryCap"] = *symmetry_cap_;
  return j;
}

Model Model::from_json(const json& j) {
  const GeneratorTable table = generators_from_json(j.at("generators"));
  Model m(j.value("name", std::string("model")), table.generators(), j.at("maxOrder").get<int>());
  if (j.contains("diff")) {
    for (const auto& [name, value] : j.at("diff").items()) m.set_diff(table.at(name), element_from_json(value, table));
  }
  if (j.contains("closure")) {
    for (const auto& [name, cells] : j.at("closure").items()) {
      std::vector<Generator> gens;
      for (const auto& c : cells) gens.push_back(table.at(c.get<std::string>()));
      m.set_closure(table.at(name), gens);
    }
  }
  if (j.contains("boundary")) {
    for (const auto& [name, value] : j.at("boundary").items()) {
      m.set_boundary(table.at(name), element_from_json(value, table));
    }
  }
  if (j.contains("symmetryCap")) m.set_symmetry_cap(j.at("symmetryCap").get<int>());
  return m;
}

// ---------------------------------------------------------------- Morphism

Morphism::Morphism(std::shared_ptr<const Model> source, std::shared_ptr<const Model> target)
    : source_(std::move(source)), target_(std::move(target)) {
  if (!source_ || !target_) throw Error("morphism needs a source and a target");
}

void Morphism::assign(Generator g, const AssocSeries& image) {
  if (!source_->contains(g)) throw Error("morphism: '" + g.name() + "' is not a source generator");
  if (!image.has_degree(g.degree())) throw DegreeError("morphism image of '" + g.name() + "' has the wrong degree");
  for (Generator l : letters(image)) {
    if (!target_->contains(l)) throw Error("morphism image of '" + g.name() + "' leaves the target");
  }
  images_.insert_or_assign(g, image.truncated(target_->max_length()));
}

void Morphism::assign(Generator g, const LieElement& image) { assign(g, target_->lift(image)); }

const AssocSeries& Morphism::image_series(Generator g) const {
  auto it = images_.find(g);
  if (it == images_.end()) throw Error("morphism does not map '" + g.name() + "'");
  return it->second;
}

LieElement Morphism::image(Generator g) const { return dynkin_projection(image_series(g)); }

AssocSeries Morphism::apply(const AssocSeries& x, int max_length) const {
  return substitute(x, [this](Generator g) { return &image_series(g); }, max_length);
}

Morphism compose(const Morphism& first, const Morphism& second) {
  if (&second.target() != &first.source() && second.target().name() != first.source().name()) {
    throw Error("compose: morphisms do not chain");
  }
  Morphism out(second.source_ptr(), first.target_ptr());
  const int len = first.target().max_length();
  for (Generator g : second.source().generators()) {
    if (second.assigns(g)) out.assign(g, first.apply(second.image_series(g), len));
  }
  return out;
}

Morphism identity_morphism(std::shared_ptr<const Model> m) {
  Morphism id(m, m);
  for (Generator g : m->generators()) id.assign(g, m->gen(g));
  return id;
}

// ---------------------------------------------------------------- reports

json Report::to_json() const {
  json fs = json::array();
  for (const auto& f : failures) {
    json jf{{"subject", f.subject}, {"detail", f.detail}};
    if (f.component) jf["component"] = *f.component;
    if (!f.term.empty()) jf["term"] = f.term;
    fs.push_back(jf);
  }
  return json{{"check", check}, {"pass", pass}, {"failures", fs}};
}

Failure describe_residual(const std::string& subject, const AssocSeries& residual) {
  Failure f{subject, "nonzero residual", std::nullopt, ""};
  if (residual.is_zero()) return f;
  const int len = residual.min_length();
  f.component = len - 1;
  const auto terms = dynkin_projection(residual.length_component(len)).sorted_terms();
  if (!terms.empty()) f.term = "(" + to_string(terms.front().second) + ")*" + terms.front().first.canonical();
  return f;
}

// ---------------------------------------------------------------- differentials

LieElement extend_diff(const Model& m, const LieElement& x, int order) {
  require_order(m, order);
  require_homogeneous(x, "extend_diff");
  return dynkin_projection(m.differential().apply(expand_assoc(x, order), order + 1));
}

AssocSeries twisted_diff(const Model& m, const AssocSeries& a, const AssocSeries& x) {
  const int len = std::min(a.max_length(), x.max_length());
  return m.differential().apply(x.truncated(len), len) + commutator(a.truncated(len), x.truncated(len));
}

Report check_mc(const Model& m, const LieElement& a, int order) {
  require_order(m, order);
  Report r{"mc", true, {}};
  if (!a.is_zero() && a.degree() != -1) {
    r.fail(Failure{"point", "point must have degree -1", std::nullopt, ""});
    return r;
  }
  const AssocSeries A = expand_assoc(a, order);
  const AssocSeries res = m.differential().apply(A, order + 1) + commutator(A, A) * Rational(1, 2);
  if (!res.is_zero()) r.fail(describe_residual("point", res));
  return r;
}

LieElement twisted_diff(const Model& m, const LieElement& a, const LieElement& x, int order) {
  require_homogeneous(x, "twisted_diff");
  if (!check_mc(m, a, order).pass) throw Error("twist point not Maurer–Cartan");
  return dynkin_projection(twisted_diff(m, expand_assoc(a, order), expand_assoc(x, order)));
}

Report check_d_squared(const Model& m, int order) {
  require_order(m, order);
  Report r{"d_squared", true, {}};
  const int len = order + 1;
  for (Generator g : m.generators()) {
    if (!m.differential().defines(g)) {
      r.fail(Failure{g.name(), "differential undefined", std::nullopt, ""});
      continue;
    }
    const AssocSeries dd = m.differential().apply(m.diff_series(g).truncated(len), len);
    if (!dd.is_zero()) r.fail(describe_residual(g.name(), dd));
  }
  return r;
}

Report check_boundary(const Model& m) {
  Report r{"boundary", true, {}};
  for (Generator g : m.generators()) {
    if (!m.differential().defines(g)) {
      r.fail(Failure{g.name(), "differential undefined", std::nullopt, ""});
      continue;
    }
    const AssocSeries res = m.diff_series(g).length_component(1) - expand_assoc(m.boundary(g), 0).truncated(1);
    if (!res.is_zero()) {
      Failure f = describe_residual(g.name(), res);
      f.detail = "bracket-free part differs from the geometric boundary";
      r.fail(f);
    }
  }
  return r;
}

Report check_locality(const Model& m) {
  Report r{"locality", true, {}};
  for (Generator g : m.generators()) {
    if (!m.differential().defines(g)) continue;
    const auto& cl = m.closure(g);
    for (Generator l : letters(m.diff_series(g))) {
      if (std::find(cl.begin(), cl.end(), l) == cl.end()) {
        r.fail(Failure{g.name(), "differential mentions '" + l.name() + "' outside the closed cell", std::nullopt, ""});
      }
    }
  }
  return r;
}

Report check_localised(const Model& m, Generator cell, const LieElement& a, int order) {
  if (cell.degree() < 1) throw Error("localisation is defined for cells of dimension greater than one");
  require_order(m, order);
  Report r{"localised", true, {}};
  const LieElement d = twisted_diff(m, a, LieElement::generator(cell), order);
  const auto& cl = m.closure(cell);
  for (Generator l : letters(expand_assoc(d, order))) {
    const bool in_closure = std::find(cl.begin(), cl.end(), l) != cl.end();
    if (!in_closure || l.degree() >= cell.degree()) {
      r.fail(Failure{cell.name(), "twisted differential mentions '" + l.name() + "'", std::nullopt, ""});
    }
  }
  return r;
}

Model twist_cell(const Model& m, Generator cell, const LieElement& e, int order) {
  require_order(m, order);
  if (cell.degree() < 1) throw Error("twist_cell: only cells of dimension greater than one can be twisted");
  if (!e.is_zero() && e.degree() != 0) throw DegreeError("twist_cell: twist element must have degree 0");
  const auto& cl = m.closure(cell);
  const AssocSeries E = expand_assoc(e, order);
  for (Generator l : letters(E)) {
    if (l.degree() > 0 || std::find(cl.begin(), cl.end(), l) == cl.end()) {
      throw LocalityError("twist element leaves the 1-skeleton of the closure of '" + cell.name() + "'");
    }
  }
  const int len = order + 1;
  const AssocSeries F = AssocSeries::generator(cell, len);
  // Old cell in terms of the new one: f = exp(ad_e) f'.
  const AssocSeries old_in_new = exp_ad(E, F);
  std::map<Generator, AssocSeries> images;
  for (Generator g : m.generators()) images.emplace(g, g == cell ? old_in_new : AssocSeries::generator(g, len));
  auto image = [&](Generator g) -> const AssocSeries* { return &images.at(g); };
  Model out(m.name(), m.generators(), order);
  for (Generator g : m.generators()) {
    if (!m.differential().defines(g)) continue;
    AssocSeries value = m.diff_series(g).truncated(len);
    if (g == cell) value = m.differential().apply(exp_ad(-E, F), len);
    out.set_diff(g, substitute(value, image, len));
  }
  for (Generator g : m.generators()) {
    out.set_boundary(g, m.boundary(g));
    if (m.has_closure(g)) out.set_closure(g, m.closure(g));
  }
  out.set_symmetry_cap(m.symmetry_cap());
  return out;
}

LieElement apply_morphism(const Morphism& phi, const LieElement& x, int order) {
  require_order(phi.target(), order);
  return dynkin_projection(phi.apply(expand_assoc(x, order), order + 1));
}

Report check_morphism(const Morphism& phi, int order) {
  require_order(phi.source(), order);
  require_order(phi.target(), order);
  Report r{"morphism", true, {}};
  const int len = order + 1;
  for (Generator g : phi.source().generators()) {
    if (!phi.assigns(g)) {
      r.fail(Failure{g.name(), "generator not mapped", std::nullopt, ""});
      continue;
    }
    const AssocSeries lhs = phi.apply(phi.source().diff_series(g).truncated(len), len);
    const AssocSeries rhs = phi.target().differential().apply(phi.image_series(g).truncated(len), len);
    const AssocSeries res = lhs - rhs;
    if (!res.is_zero()) r.fail(describe_residual(g.name(), res));
  }
  return r;
}

Report check_symmetry(const Model& m, const Morphism& phi, int order) {
  if (m.symmetry_cap() && order > *m.symmetry_cap()) throw OrderCapError("order capped by μₙ");
  Report r = check_morphism(phi, order);
  r.check = "symmetry";
  return r;
}

}  // namespace dgla
