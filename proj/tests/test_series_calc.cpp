#include <doctest.h>

#include <random>

#include "dgla/json_io.hpp"
#include "dgla/series_calc.hpp"
#include "test_util.hpp"

using namespace dgla;

namespace {

LieElement G(Generator g) { return LieElement::generator(g); }
LieElement br(const LieElement& x, const LieElement& y) { return bracket(x, y); }

/// Two vertices a, b joined by k edges, each with the interval differential.
struct EdgeFamily {
  Generator a, b;
  std::vector<Generator> edges;
  Differential d;
  int len;

  EdgeFamily(const std::string& prefix, int k, int order) : len(order + 1) {
    a = Generator::make(prefix + "_a", -1);
    b = Generator::make(prefix + "_b", -1);
    const auto A = AssocSeries::generator(a, len), B = AssocSeries::generator(b, len);
    d.set(a, commutator(A, A) * Rational(-1, 2));
    d.set(b, commutator(B, B) * Rational(-1, 2));
    for (int i = 0; i < k; ++i) {
      edges.push_back(Generator::make(prefix + "_e" + std::to_string(i + 1), 0));
      d.set(edges.back(), interval_diff(AssocSeries::generator(edges.back(), len), A, B));
    }
  }
  AssocSeries A() const { return AssocSeries::generator(a, len); }
  AssocSeries B() const { return AssocSeries::generator(b, len); }
  AssocSeries E(int i) const { return AssocSeries::generator(edges[static_cast<std::size_t>(i)], len); }

  AssocSeries mc(const AssocSeries& x) const { return d.apply(x) + commutator(x, x) * Rational(1, 2); }
  AssocSeries twisted(const AssocSeries& p, const AssocSeries& x) const { return d.apply(x) + commutator(p, x); }

  /// Random degree-0 element: combination of edges plus a few brackets of them.
  AssocSeries random_even(std::mt19937& rng) const {
    std::vector<Generator> pool(edges);
    return expand_assoc(testutil::random_element(rng, pool, 2, 3), len - 1);
  }
};

}  // namespace

TEST_CASE("BCH low-order coefficients") {
  const auto gens = testutil::even_generators("sbch", 2);
  const LieElement x = G(gens[0]), y = G(gens[1]);
  const LieElement z = bch2(x, y, 3);
  CHECK(is_equal(component(z, 0), x + y, 3));
  CHECK(is_equal(component(z, 1), br(x, y) * Rational(1, 2), 3));
  CHECK(is_equal(component(z, 2), (br(x, br(x, y)) + br(y, br(y, x))) * Rational(1, 12), 3));
  CHECK(is_equal(component(z, 3), br(y, br(x, br(x, y))) * Rational(-1, 24), 3));
  CHECK(bch2(x, LieElement(), 4) == normalize(x, 4));
  CHECK(bch2(LieElement(), y, 4) == normalize(y, 4));
  CHECK(bch2(x, -x, 4).is_zero());
  CHECK_THROWS_AS(bch2(G(Generator::make("sbch_a", -1)), y, 2), DegreeError);
}

TEST_CASE("BCH re-exponentiates and is associative") {
  std::mt19937 rng(21);
  const auto gens = testutil::even_generators("sbp", 3);
  for (int trial = 0; trial < 50; ++trial) {
    const int order = 1 + static_cast<int>(rng() % 4);
    const LieElement x = testutil::random_even(rng, gens, 1, 2);
    const LieElement y = testutil::random_even(rng, gens, 1, 2);
    const LieElement z = testutil::random_even(rng, gens, 1, 2);
    const auto X = expand_assoc(x, order), Y = expand_assoc(y, order);
    CHECK(exp_series(expand_assoc(bch2(x, y, order), order)) == exp_series(X) * exp_series(Y));
    CHECK(is_equal(bch2(x, bch2(y, z, order), order), bch2(bch2(x, y, order), z, order), order));
    CHECK(is_equal(bch_multi({x, y, z}, order), bch2(x, bch2(y, z, order), order), order));
  }
  const LieElement e = G(gens[0]), f = G(gens[1]);
  CHECK(is_equal(bch_multi({e, -e, f}, 4), f, 4));
  CHECK(bch_multi({e}, 3) == normalize(e, 3));
}

TEST_CASE("ad of BCH is BCH of ad") {
  std::mt19937 rng(22);
  const auto gens = testutil::mixed_generators("sad");
  const auto even = testutil::even_generators("sad_e", 2);
  const OperatorPoly X = OperatorPoly::variable(2, 1, 3), Y = OperatorPoly::variable(2, 2, 3);
  const OperatorPoly composed = bch2(X, Y);
  for (int trial = 0; trial < 50; ++trial) {
    const int order = 1 + static_cast<int>(rng() % 3);
    const LieElement x = testutil::random_even(rng, even, 1, 2);
    const LieElement y = testutil::random_even(rng, even, 1, 2);
    const LieElement t = testutil::random_homogeneous(rng, gens, 1);
    const LieElement lhs = op_apply(composed, {x, y}, t, order);
    const LieElement rhs = br(bch2(x, y, order), t);
    CHECK(is_equal(lhs, rhs, order));
  }
}

TEST_CASE("exp_ad basics and group law") {
  std::mt19937 rng(23);
  const auto even = testutil::even_generators("sea", 2);
  const auto gens = testutil::mixed_generators("sea_m");
  const LieElement e = G(even[0]);
  const LieElement x = G(gens[0]);
  CHECK(exp_ad(LieElement(), x, 3) == normalize(x, 3));
  CHECK(is_equal(exp_ad(e, x, 1), x + br(e, x), 1));
  for (int trial = 0; trial < 50; ++trial) {
    const int order = 1 + static_cast<int>(rng() % 4);
    const LieElement e1 = testutil::random_even(rng, even, 1, 2);
    const LieElement e2 = testutil::random_even(rng, even, 1, 2);
    const LieElement t = testutil::random_homogeneous(rng, gens, 1);
    CHECK(is_equal(exp_ad(-e2, exp_ad(-e1, t, order), order), exp_ad(-bch2(e1, e2, order), t, order), order));
  }
}

TEST_CASE("interval differential expansion") {
  EdgeFamily fam("sid", 1, 6);
  const Generator e = fam.edges[0];
  const LieElement de = interval_diff(e, fam.a, fam.b, 4);
  const LieElement E = G(e), A = G(fam.a), B = G(fam.b);
  CHECK(is_equal(component(de, 0), B - A, 4));
  CHECK(is_equal(component(de, 1), br(E, A + B) * Rational(1, 2), 4));
  CHECK(is_equal(component(de, 2), br(E, br(E, B - A)) * Rational(1, 12), 4));
  CHECK(is_equal(component(de, 3), LieElement(), 4));
  CHECK(is_equal(component(de, 4), br(E, br(E, br(E, br(E, B - A)))) * Rational(-1, 720), 4));
  CHECK(fam.d.apply(fam.d.apply(fam.E(0))).is_zero());
  CHECK_THROWS_AS(interval_diff(fam.a, fam.a, fam.b, 2), DegreeError);
}

TEST_CASE("flow along an interval edge reaches the far vertex") {
  for (int order = 0; order <= 5; ++order) {
    EdgeFamily fam("sfl" + std::to_string(order), 1, order);
    CHECK(is_equal(flow(G(fam.edges[0]), G(fam.a), fam.d, order), G(fam.b), order));
  }
  EdgeFamily fam("sfl_t", 1, 3);
  const LieElement e = G(fam.edges[0]), a = G(fam.a);
  CHECK(is_equal(flow(LieElement(), a, fam.d, 3), a, 3));
  CHECK(is_equal(flow_time(e, a, 0, fam.d, 3), a, 3));
  CHECK(is_equal(flow_time(e, a, 1, fam.d, 3), flow(e, a, fam.d, 3), 3));
  // a + de - [e, a + de/2] through one bracket
  const LieElement de = normalize(dynkin_projection(fam.d.value(fam.edges[0])), 1);
  const LieElement expect = a + de - br(e, a + de * Rational(1, 2));
  CHECK(is_equal(flow(e, a, fam.d, 1), expect, 1));
}

TEST_CASE("flow properties on random inputs") {
  std::mt19937 rng(24);
  const int order = 4;
  EdgeFamily fam("sfp", 3, order);
  const auto A = fam.A(), B = fam.B();
  int cases = 0;
  for (int trial = 0; trial < 50; ++trial) {
    const AssocSeries e1 = fam.random_even(rng);
    const AssocSeries e2 = fam.random_even(rng);
    const Rational t = ratio(static_cast<long>(rng() % 7) - 3, 1 + static_cast<long>(rng() % 3));

    // MC is preserved by flowing.
    const AssocSeries p = flow(e1 * t, A, fam.d);
    CHECK(fam.mc(p).is_zero());

    // Composition of flows.
    CHECK(flow(e2, flow(e1, A, fam.d), fam.d) == flow(bch2(e1, e2), A, fam.d));

    // Loops BCH(e_i, -e_j) are twisted-closed at a, hence fixed.
    const int i = static_cast<int>(rng() % 3), j = static_cast<int>((i + 1 + rng() % 2) % 3);
    AssocSeries loop = bch2(fam.E(i), -fam.E(j));
    if (rng() % 2) loop = commutator(loop, bch2(fam.E(j), -fam.E((j + 1) % 3))) + loop * t;
    CHECK(fam.twisted(A, loop).is_zero());
    CHECK(flow(loop * t, A, fam.d) == A);

    // Flowing along an edge intertwines the twisted differentials.
    const auto gens = std::vector<Generator>{fam.a, fam.b, fam.edges[0], fam.edges[1]};
    const AssocSeries x = expand_assoc(testutil::random_homogeneous(rng, gens, 2), order);
    const AssocSeries e = fam.E(static_cast<int>(rng() % 3));
    CHECK(fam.twisted(B, exp_ad(-e, x)) == exp_ad(-e, fam.twisted(A, x)));
    ++cases;
  }
  CHECK(cases >= 50);
}

TEST_CASE("universal averages") {
  const auto even = testutil::even_generators("smu", 3);
  const LieElement x = G(even[0]), y = G(even[1]), z = G(even[2]);
  const LieElement m = mu2(x, y, 3);
  CHECK(is_equal(component(m, 0), (x + y) * Rational(1, 2), 3));
  CHECK(component(m, 1).is_zero());
  CHECK(is_equal(component(m, 2), (br(x, br(x, y)) + br(y, br(y, x))) * Rational(-1, 48), 3));
  CHECK(is_equal(mu2(x, y, 3), mu2(y, x, 3), 3));
  CHECK(is_equal(mun({x, y}, 2), mu2(x, y, 2), 2));
  CHECK(is_equal(mun({x, y}, 4), mu2(x, y, 4), 4));
  CHECK(mun({x}, 3) == normalize(x, 3));
  CHECK(is_equal(mun({-x, -y, -z}, 2), -mun({x, y, z}, 2), 2));
  CHECK_THROWS_AS(mun({x, y, z}, 3), OrderCapError);
  CHECK(is_equal(mun({x, y, z}, 2), mun({z, x, y}, 2), 2));

  // mu2 of two edges flows a to b.
  EdgeFamily fam("smu_f", 2, 3);
  CHECK(flow(mu2(fam.E(0), fam.E(1)), fam.A(), fam.d) == fam.B());
  CHECK(flow(mun_two_bracket({fam.E(0), fam.E(1)}), fam.A(), fam.d).truncated(3) == fam.B().truncated(3));
}

TEST_CASE("Q extraction") {
  const OperatorPoly q = extract_Q(4);
  CHECK(q.scalar_term() == 0);
  CHECK(q.coefficient({1}) == Rational(1, 2));
  CHECK(q.coefficient({2}) == 0);
  CHECK(q.coefficient({1, 1}) == Rational(1, 12));
  CHECK(q.coefficient({2, 1}) == Rational(-1, 12));
  CHECK(q.coefficient({1, 2}) == 0);
  CHECK(q.coefficient({2, 2}) == 0);
  const auto even = testutil::even_generators("sq", 2);
  const LieElement x = G(even[0]), y = G(even[1]);
  for (int order = 1; order <= 4; ++order) {
    const OperatorPoly qo = extract_Q(order);
    CHECK(is_equal(x + y + op_apply(qo, {x, y}, y, order), bch2(x, y, order), order));
  }
  CHECK(op_apply(q, {x, LieElement()}, LieElement(), 4).is_zero());
}

TEST_CASE("operator polynomials") {
  const auto even = testutil::even_generators("sop", 2);
  const auto gens = testutil::mixed_generators("sop_m");
  const LieElement u = G(even[0]), v = G(even[1]), t = G(gens[0]);
  CHECK(is_equal(op_apply(OperatorPoly::one(1, 3), {u}, t, 3), t, 3));
  CHECK(is_equal(op_apply(OperatorPoly::variable(1, 1, 3), {u}, t, 3), br(u, t), 3));
  const OperatorPoly X = OperatorPoly::variable(2, 1, 3), Y = OperatorPoly::variable(2, 2, 3);
  const OperatorPoly p = X * Y + Y * Rational(2);
  CHECK(is_equal(op_apply(p, {u, v}, t, 3), br(u, br(v, t)) + br(v, t) * Rational(2), 3));
  CHECK_THROWS_AS(op_apply(p, {u}, t, 3), Error);

  // Substitution composes with evaluation.
  const OperatorPoly Z = OperatorPoly::variable(1, 1, 3);
  const OperatorPoly sub = p.substitute({Z * Rational(2), Z * Z});
  CHECK(sub.coefficient({1, 1, 1}) == 2);
  CHECK(sub.coefficient({1, 1}) == 2);
  CHECK(sub.series().size() == 2);
  CHECK(is_equal(op_apply(sub, {u}, t, 3), br(u, br(u, br(u, t))) * Rational(2) + br(u, br(u, t)) * Rational(2), 3));

  const auto j = p.to_json();
  CHECK(j.dump() == R"({"symbols":2,"terms":[{"coeff":"2","word":[2]},{"coeff":"1","word":[1,2]}]})");
  CHECK(OperatorPoly::from_json(j, 3) == p);
}

TEST_CASE("path BCH") {
  const auto even = testutil::even_generators("spb", 2);
  const LieElement e = G(even[0]), f = G(even[1]);
  CHECK(path_bch(Path{{{e, 1}}}, 3) == normalize(e, 3));
  CHECK(path_bch(Path{{{e, 1}, {e, -1}}}, 3).is_zero());
  CHECK(is_equal(path_bch(Path{{{e, 1}, {f, -1}}}, 3), bch2(e, -f, 3), 3));

  EdgeFamily fam("spb_f", 2, 3);
  const LieElement loop = path_bch(Path{{{G(fam.edges[0]), 1}, {G(fam.edges[1]), -1}}}, 3);
  CHECK(is_equal(flow(loop, G(fam.a), fam.d, 3), G(fam.a), 3));
}
