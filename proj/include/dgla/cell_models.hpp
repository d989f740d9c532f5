#pragma once

#include <memory>
#include <string>
#include <vector>

#include "dgla/dgla_model.hpp"
#include "dgla/series_calc.hpp"

namespace dgla {

// Interval [a, b] with edge e.
Model interval_model(int order);

// Bi-gon: vertices a, b, edges e1, e2, face f localised at its centre.
Model bigon_model(int order);

/// Differential of a square-like face whose boundary is chain_p - chain_q,
/// both chains running from `start` to a common end vertex. The face is
/// localised at its centre u_{w/2}(start), w = mu_2(BCH(chain_p), BCH(chain_q)).
struct SquareFace {
  AssocSeries diff;
  AssocSeries centre;
  AssocSeries diagonal;
};
SquareFace square_face_diff(const Differential& d, Generator face, const std::vector<AssocSeries>& chain_p,
                            const std::vector<AssocSeries>& chain_q, const AssocSeries& start);

struct SquareFaceElements {
  LieElement diff;
  LieElement centre;
  LieElement diagonal;
};
/// Element-level wrapper; `m` supplies the differential of the edge letters.
SquareFaceElements square_face_diff(const Model& m, Generator face, const std::vector<LieElement>& chain_p,
                                    const std::vector<LieElement>& chain_q, const LieElement& start, int order);

// ---------------------------------------------------------------- banana

/// Dihedrally averaged coefficient polynomials P_1..P_n in n-1 symbols.
std::vector<OperatorPoly> banana_P(int n, int order);
/// The unaveraged solution P_1 = P_n = 1, P_i = 1 + Q(BCH(X_1..X_{i-1}), X_i).
std::vector<OperatorPoly> banana_P_unaveraged(int n, int order);

/// sum_{i<n} P_i(ad x) x_i = P_n(ad x) BCH(x_1..x_{n-1}) on free degree-0 symbols.
Report check_loop_identity(const std::vector<OperatorPoly>& p, int order);
/// P_{i+1}(X) = P_i(X_2, .., X_{n-1}, -BCH(X)), indices mod n.
Report check_cyclic_condition(const std::vector<OperatorPoly>& p);
/// P_{n-i}(X) = P_i(-X_{n-1}, .., -X_1), with P_0 = P_n.
Report check_reversal_condition(const std::vector<OperatorPoly>& p);

/// Faces and 3-cell localised at a. Generators a, b, e1..en, f1..fn, h.
Model banana_model_at_a(int n, int order);
/// Faces localised at their centres and h at the central point.
Model banana_model_symmetric(int n, int order);

enum class BananaSymmetry { Tau, Sigma, Iota };
BananaSymmetry parse_banana_symmetry(const std::string& name);
Morphism banana_symmetry(std::shared_ptr<const Model> m, BananaSymmetry kind);

// ---------------------------------------------------------------- polyhedra

/// A 3-cell with a shelling: chains gamma_1..gamma_n from a to b, with face i
/// bounded by the parts of gamma_i and gamma_{i+1} between their common
/// initial and final segments.
struct PolyhedronSpec {
  struct Edge {
    std::string name, from, to;
  };
  struct Face {
    std::string name;
    std::vector<std::string> delta, delta_prime;
    int sign = 1;  // the face generator's boundary is sign * (delta - delta_prime)
  };
  std::string name = "polyhedron";
  std::string cell = "h";
  std::string a, b;
  std::vector<std::string> vertices;
  std::vector<Edge> edges;
  std::vector<std::vector<std::string>> chains;
  std::vector<Face> faces;

  static PolyhedronSpec from_json(const json& j);
  json to_json() const;
};

/// Faces localised at the start of delta_i, the 3-cell at a.
Model polyhedron_model(const PolyhedronSpec& spec, int order);
PolyhedronSpec banana_shelling(int n);
PolyhedronSpec cube_shelling();

// ---------------------------------------------------------------- cube

struct CubeMorphism {
  std::shared_ptr<const Model> source;  // symmetric 6-faceted banana
  std::shared_ptr<const Model> target;  // cube
  Morphism phi;
  std::vector<std::string> face_images;  // cube face hit by banana face i
  std::vector<int> signs;
  std::vector<LieElement> conjugators;
};

/// The map from the symmetric 6-faceted banana to the cube, together with the
/// cube model whose 3-cell differential it induces.
CubeMorphism cube_morphism(int order);
Model cube_model(int order);

}  // namespace dgla
