#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "dgla/differential.hpp"
#include "dgla/json_io.hpp"
#include "dgla/lie_element.hpp"

namespace dgla {

/// Free DGLA on a finite set of generators, with the differential trusted up
/// to `max_order` brackets, the closed cell of each generator, and its
/// bracket-free boundary.
class Model {
 public:
  Model(std::string name, std::vector<Generator> generators, int max_order);

  const std::string& name() const { return name_; }
  const std::vector<Generator>& generators() const { return generators_; }
  bool contains(Generator g) const;
  Generator generator(const std::string& name) const;
  int max_order() const { return max_order_; }
  /// Word-length bound of stored differentials.
  int max_length() const { return max_order_ + 1; }

  /// Stores dg; its terms must all have degree |g| - 1.
  void set_diff(Generator g, const AssocSeries& value);
  void set_diff(Generator g, const LieElement& value);
  const AssocSeries& diff_series(Generator g) const { return differential_.value(g); }
  LieElement diff(Generator g) const;
  const Differential& differential() const { return differential_; }

  /// Closed cell of g, including g itself.
  void set_closure(Generator g, std::vector<Generator> cells);
  const std::vector<Generator>& closure(Generator g) const;
  bool has_closure(Generator g) const { return closure_.count(g) != 0; }

  /// Oriented geometric boundary of g (no brackets).
  void set_boundary(Generator g, const LieElement& boundary);
  const LieElement& boundary(Generator g) const;

  /// Highest order at which symmetry checks are meaningful, when limited.
  std::optional<int> symmetry_cap() const { return symmetry_cap_; }
  void set_symmetry_cap(std::optional<int> cap) { symmetry_cap_ = cap; }

  /// Lifts an element to the associative algebra at this model's length.
  AssocSeries lift(const LieElement& x) const { return expand_assoc(x, max_order_); }
  AssocSeries gen(Generator g) const { return AssocSeries::generator(g, max_length()); }

  json to_json() const;
  static Model from_json(const json& j);

 private:
  std::string name_;
  std::vector<Generator> generators_;
  int max_order_;
  Differential differential_;
  std::map<Generator, std::vector<Generator>> closure_;
  std::map<Generator, LieElement> boundary_;
  std::optional<int> symmetry_cap_;
};

/// Degree-preserving map of free DGLAs given on generators.
class Morphism {
 public:
  Morphism(std::shared_ptr<const Model> source, std::shared_ptr<const Model> target);

  const Model& source() const { return *source_; }
  const Model& target() const { return *target_; }
  std::shared_ptr<const Model> source_ptr() const { return source_; }
  std::shared_ptr<const Model> target_ptr() const { return target_; }

  void assign(Generator g, const LieElement& image);
  void assign(Generator g, const AssocSeries& image);
  bool assigns(Generator g) const { return images_.count(g) != 0; }
  const AssocSeries& image_series(Generator g) const;
  LieElement image(Generator g) const;

  /// Applies the homomorphism to a series in source letters.
  AssocSeries apply(const AssocSeries& x, int max_length) const;

 private:
  std::shared_ptr<const Model> source_;
  std::shared_ptr<const Model> target_;
  std::map<Generator, AssocSeries> images_;
};

/// first ∘ second, i.e. x ↦ first(second(x)).
Morphism compose(const Morphism& first, const Morphism& second);
Morphism identity_morphism(std::shared_ptr<const Model> m);

struct Failure {
  std::string subject;
  std::string detail;
  std::optional<int> component;  // bracket count of the first nonzero discrepancy
  std::string term;              // one offending term, canonical text
};

struct Report {
  std::string check;
  bool pass = true;
  std::vector<Failure> failures;

  void fail(Failure f) {
    pass = false;
    failures.push_back(std::move(f));
  }
  json to_json() const;
};

/// Fills a failure describing the lowest-length part of a nonzero residual.
Failure describe_residual(const std::string& subject, const AssocSeries& residual);

LieElement extend_diff(const Model& m, const LieElement& x, int order);
/// (d + ad_a) x; throws unless a is Maurer–Cartan at `order`.
LieElement twisted_diff(const Model& m, const LieElement& a, const LieElement& x, int order);
/// Series form: no homogeneity or MC checks.
AssocSeries twisted_diff(const Model& m, const AssocSeries& a, const AssocSeries& x);

Report check_mc(const Model& m, const LieElement& a, int order);
Report check_d_squared(const Model& m, int order);
Report check_boundary(const Model& m);
Report check_locality(const Model& m);
Report check_localised(const Model& m, Generator cell, const LieElement& a, int order);

/// Replaces `cell` by exp(-ad_e) cell. Afterwards a point p at which the cell
/// was localised is replaced by u_e(p).
Model twist_cell(const Model& m, Generator cell, const LieElement& e, int order);

LieElement apply_morphism(const Morphism& phi, const LieElement& x, int order);
Report check_morphism(const Morphism& phi, int order);
/// check_morphism for an endomorphism; honours the model's symmetry cap.
Report check_symmetry(const Model& m, const Morphism& phi, int order);

}  // namespace dgla
