#include <doctest.h>

#include <memory>

#include "dgla/dgla_model.hpp"
#include "dgla/series_calc.hpp"

using namespace dgla;

namespace {

LieElement G(Generator g) { return LieElement::generator(g); }

/// Interval a --e--> b plus a bi-gon face f localised at a.
struct Fixture {
  Generator a = Generator::make("ma", -1), b = Generator::make("mb", -1);
  Generator e1 = Generator::make("me1", 0), e2 = Generator::make("me2", 0);
  Generator f = Generator::make("mf", 1);
  int order;
  Model m;

  explicit Fixture(int order_) : order(order_), m("fixture", {a, b, e1, e2, f}, order_) {
    const AssocSeries A = m.gen(a), B = m.gen(b);
    m.set_diff(a, commutator(A, A) * Rational(-1, 2));
    m.set_diff(b, commutator(B, B) * Rational(-1, 2));
    for (Generator e : {e1, e2}) {
      m.set_diff(e, interval_diff(m.gen(e), A, B));
      m.set_closure(e, {a, b});
      m.set_boundary(e, G(b) - G(a));
    }
    m.set_closure(a, {a});
    m.set_closure(b, {b});
    m.set_diff(f, bch2(m.gen(e1), -m.gen(e2)) - commutator(A, m.gen(f)));
    m.set_closure(f, {a, b, e1, e2});
    m.set_boundary(f, G(e1) - G(e2));
  }
};

}  // namespace

TEST_CASE("set_diff validates degree and letters") {
  Fixture x(3);
  CHECK_THROWS_AS(x.m.set_diff(x.e1, x.m.gen(x.e2)), DegreeError);
  const Generator stranger = Generator::make("mstranger", -1);
  CHECK_THROWS_AS(x.m.set_diff(x.e1, AssocSeries::generator(stranger, 4)), Error);
  CHECK_THROWS_AS(x.m.generator("nope"), Error);
  CHECK(x.m.generator("mf") == x.f);
}

TEST_CASE("extend_diff is a derivation and squares to zero") {
  Fixture x(4);
  const LieElement u = bracket(G(x.e1), G(x.f));
  const LieElement lhs = extend_diff(x.m, u, 4);
  const LieElement rhs = bracket(extend_diff(x.m, G(x.e1), 4), G(x.f)) + bracket(G(x.e1), extend_diff(x.m, G(x.f), 4));
  CHECK(is_equal(lhs, rhs, 4));
  CHECK(extend_diff(x.m, extend_diff(x.m, u, 4), 4).is_zero());
  CHECK_THROWS_AS(extend_diff(x.m, G(x.a) + G(x.e1), 4), DegreeError);
}

TEST_CASE("Maurer-Cartan checks") {
  Fixture x(3);
  CHECK(check_mc(x.m, G(x.a), 3).pass);
  CHECK(check_mc(x.m, G(x.b), 3).pass);
  const Report bad = check_mc(x.m, G(x.a) + G(x.b), 3);
  CHECK_FALSE(bad.pass);
  REQUIRE(bad.failures.size() == 1);
  CHECK(bad.failures[0].component == 1);
  CHECK_FALSE(check_mc(x.m, G(x.e1), 3).pass);
  const LieElement moved = dynkin_projection(flow(x.m.gen(x.e1), x.m.gen(x.a), x.m.differential()));
  CHECK(check_mc(x.m, moved, 3).pass);
  CHECK_THROWS_AS(twisted_diff(x.m, G(x.a) + G(x.b), G(x.f), 3), Error);
  CHECK(is_equal(twisted_diff(x.m, G(x.a), G(x.f), 3), bch2(G(x.e1), -G(x.e2), 3), 3));
}

TEST_CASE("d squared detects a corrupted coefficient") {
  Fixture x(3);
  CHECK(check_d_squared(x.m, 3).pass);
  CHECK_THROWS_AS(check_d_squared(x.m, 4), OrderCapError);

  // Replace the 1/12 coefficient of the interval differential by 1/10.
  Model broken = x.m;
  const AssocSeries E = x.m.gen(x.e1), D = x.m.gen(x.b) - x.m.gen(x.a);
  broken.set_diff(x.e1, x.m.diff_series(x.e1) + commutator(E, commutator(E, D)) * (Rational(1, 10) - Rational(1, 12)));
  const Report r = check_d_squared(broken, 3);
  CHECK_FALSE(r.pass);
  REQUIRE_FALSE(r.failures.empty());
  CHECK(r.failures[0].subject == "me1");
  CHECK(r.failures[0].component == 2);
  CHECK_FALSE(r.failures[0].term.empty());
}

TEST_CASE("boundary and locality axioms") {
  Fixture x(2);
  CHECK(check_boundary(x.m).pass);
  CHECK(check_locality(x.m).pass);
  CHECK(check_localised(x.m, x.f, G(x.a), 2).pass);
  CHECK_THROWS_AS(check_localised(x.m, x.e1, G(x.a), 2), Error);

  Model wrong_boundary = x.m;
  wrong_boundary.set_boundary(x.f, G(x.e2) - G(x.e1));
  CHECK_FALSE(check_boundary(wrong_boundary).pass);

  Model narrow = x.m;
  narrow.set_closure(x.f, {x.a, x.b, x.e1});
  const Report r = check_locality(narrow);
  REQUIRE_FALSE(r.pass);
  CHECK(r.failures[0].subject == "mf");

  // Localised at b only after moving along an edge.
  CHECK_FALSE(check_localised(x.m, x.f, G(x.b), 2).pass);
}

TEST_CASE("twisting a cell moves its localisation point") {
  Fixture x(3);
  const LieElement e = G(x.e1) * Rational(1, 2);
  const Model t = twist_cell(x.m, x.f, e, 3);
  CHECK(check_d_squared(t, 3).pass);
  CHECK(check_boundary(t).pass);
  CHECK(check_locality(t).pass);
  const LieElement p = dynkin_projection(flow(expand_assoc(e, 3), t.gen(x.a), t.differential()));
  CHECK(check_localised(t, x.f, p, 3).pass);
  CHECK_FALSE(check_localised(t, x.f, G(x.a), 3).pass);

  // Twisting back restores the original model.
  const Model back = twist_cell(t, x.f, -e, 3);
  for (Generator g : x.m.generators()) CHECK(back.diff_series(g) == x.m.diff_series(g));

  CHECK_THROWS_AS(twist_cell(x.m, x.f, G(x.f), 3), DegreeError);
  CHECK_THROWS_AS(twist_cell(x.m, x.e1, e, 3), Error);
}

TEST_CASE("twist by half the bi-gon diagonal") {
  Fixture x(3);
  const AssocSeries v = mu2(x.m.gen(x.e1), x.m.gen(x.e2));
  const Model t = twist_cell(x.m, x.f, dynkin_projection(v * Rational(1, 2)), 3);
  const AssocSeries centre = flow(v * Rational(1, 2), x.m.gen(x.a), x.m.differential());
  const AssocSeries expected = bch_multi({v * Rational(-1, 2), x.m.gen(x.e1), -x.m.gen(x.e2), v * Rational(1, 2)}, 4);
  CHECK(twisted_diff(t, centre, t.gen(x.f)) == expected);
}

TEST_CASE("morphisms") {
  Fixture x(3);
  auto m = std::make_shared<const Model>(x.m);
  const Morphism id = identity_morphism(m);
  CHECK(check_morphism(id, 3).pass);

  // Swapping the two edges negates the face.
  Morphism swap(m, m);
  for (Generator g : {x.a, x.b}) swap.assign(g, G(g));
  swap.assign(x.e1, G(x.e2));
  swap.assign(x.e2, G(x.e1));
  CHECK_FALSE(swap.assigns(x.f));
  CHECK_FALSE(check_morphism(swap, 3).pass);
  swap.assign(x.f, -G(x.f));
  // f is localised at a, the swap keeps a: this is an exact symmetry.
  CHECK(check_morphism(swap, 3).pass);
  const Morphism twice = compose(swap, swap);
  for (Generator g : x.m.generators()) CHECK(twice.image_series(g) == id.image_series(g));
  CHECK(is_equal(apply_morphism(swap, bracket(G(x.e1), G(x.f)), 3), -bracket(G(x.e2), G(x.f)), 3));

  Morphism bad(m, m);
  CHECK_THROWS_AS(bad.assign(x.e1, G(x.f)), DegreeError);
  CHECK_THROWS_AS(check_symmetry(*m, id, 4), OrderCapError);
  Model capped = x.m;
  capped.set_symmetry_cap(2);
  CHECK_THROWS_WITH_AS(check_symmetry(capped, id, 3), "order capped by μₙ", OrderCapError);
  CHECK(check_symmetry(capped, id, 2).check == "symmetry");
}

TEST_CASE("model and report JSON") {
  Fixture x(2);
  x.m.set_symmetry_cap(2);
  const json j = x.m.to_json();
  CHECK(j.at("name") == "fixture");
  CHECK(j.at("maxOrder") == 2);
  const Model back = Model::from_json(j);
  CHECK(back.to_json() == j);
  for (Generator g : x.m.generators()) CHECK(back.diff_series(g) == x.m.diff_series(g));
  CHECK(back.symmetry_cap() == 2);

  Report r{"demo", true, {}};
  CHECK(r.to_json().at("pass") == true);
  r.fail(describe_residual("g", x.m.gen(x.e1)));
  const json rj = r.to_json();
  CHECK(rj.at("pass") == false);
  CHECK(rj.at("failures")[0].at("subject") == "g");
  CHECK(rj.at("failures")[0].at("component") == 0);
  CHECK(rj.at("failures")[0].at("term") == "(1)*me1");
}
