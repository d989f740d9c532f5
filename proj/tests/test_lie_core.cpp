#include <doctest.h>

#include <random>

#include "dgla/differential.hpp"
#include "dgla/json_io.hpp"
#include "dgla/lie_element.hpp"
#include "test_util.hpp"

using namespace dgla;

TEST_CASE("rational parsing and printing") {
  CHECK(parse_rational("-1/2") == Rational(-1, 2));
  CHECK(parse_rational("6/4") == Rational(3, 2));
  CHECK(parse_rational("7") == Rational(7));
  CHECK_THROWS_AS(parse_rational("1/0"), Error);
  CHECK_THROWS_AS(parse_rational("abc"), Error);
  CHECK_THROWS_AS(parse_rational(""), Error);
  CHECK(to_string(parse_rational("-3/6")) == "-1/2");
  CHECK(to_string(parse_rational("4/2")) == "2");
}

TEST_CASE("generators are interned by name and degree") {
  const Generator a = Generator::make("lc_a", -1);
  CHECK(Generator::make("lc_a", -1) == a);
  CHECK(a.degree() == -1);
  CHECK(a.name() == "lc_a");
  CHECK_THROWS_AS(Generator::make("bad name", 0), Error);
  CHECK_THROWS_AS(Generator::make("", 0), Error);
}

TEST_CASE("Bernoulli numbers") {
  CHECK(bernoulli(0) == 1);
  CHECK(bernoulli(1) == Rational(-1, 2));
  CHECK(bernoulli(2) == Rational(1, 6));
  CHECK(bernoulli(3) == 0);
  CHECK(bernoulli(4) == Rational(-1, 30));
  CHECK(bernoulli(6) == Rational(1, 42));
  CHECK(bernoulli(12) == Rational(-691, 2730));
}

TEST_CASE("graded antisymmetry and Jacobi hold after normalization") {
  std::mt19937 rng(11);
  const auto gens = testutil::mixed_generators("lcj");
  for (int trial = 0; trial < 60; ++trial) {
    const LieElement x = testutil::random_homogeneous(rng, gens, 2);
    const LieElement y = testutil::random_homogeneous(rng, gens, 2);
    const LieElement z = testutil::random_homogeneous(rng, gens, 1);
    const int dx = x.degree().value_or(0), dy = y.degree().value_or(0), dz = z.degree().value_or(0);
    const int order = 8;
    const LieElement anti = bracket(x, y) + bracket(y, x) * Rational(koszul_sign(dx, dy));
    CHECK(is_equal(anti, LieElement(), order));
    const LieElement jac = bracket(x, bracket(y, z)) * Rational(koszul_sign(dx, dz)) +
                           bracket(y, bracket(z, x)) * Rational(koszul_sign(dy, dx)) +
                           bracket(z, bracket(x, y)) * Rational(koszul_sign(dz, dy));
    CHECK(is_equal(jac, LieElement(), order));
  }
}

TEST_CASE("normal form depends only on the value") {
  std::mt19937 rng(12);
  const auto gens = testutil::mixed_generators("lcd");
  for (int trial = 0; trial < 60; ++trial) {
    const LieElement x = testutil::random_element(rng, gens, 3, 4);
    const LieElement nx = normalize(x, 6);
    CHECK(is_equal(nx, x, 6));
    // Adding a vanishing antisymmetry combination must not change the normal form.
    const LieElement y = testutil::random_homogeneous(rng, gens, 1);
    const LieElement z = testutil::random_homogeneous(rng, gens, 1);
    const int s = koszul_sign(y.degree().value(), z.degree().value());
    const LieElement zero = bracket(y, z) + bracket(z, y) * Rational(s);
    CHECK(normalize(x + zero, 6) == nx);
    CHECK(normalize(nx, 6) == normalize(normalize(nx, 6), 6));
  }
}

TEST_CASE("odd self-bracket survives, even self-bracket vanishes") {
  const Generator a = Generator::make("lcs_a", -1);
  const Generator e = Generator::make("lcs_e", 0);
  const LieElement A = LieElement::generator(a), E = LieElement::generator(e);
  CHECK_FALSE(normalize(bracket(A, A), 3).is_zero());
  CHECK(normalize(bracket(E, E), 3).is_zero());
  CHECK(normalize(bracket(A, bracket(A, A)), 3).is_zero());
}

TEST_CASE("differential is a graded derivation") {
  const Generator a = Generator::make("lcdd_a", -1);
  const Generator e = Generator::make("lcdd_e", 0);
  const Generator f = Generator::make("lcdd_f", 1);
  const int len = 5;
  const auto A = AssocSeries::generator(a, len);
  const auto E = AssocSeries::generator(e, len);
  const auto F = AssocSeries::generator(f, len);
  Differential d;
  d.set(a, commutator(A, A) * Rational(-1, 2));
  d.set(e, commutator(E, A) + A);
  d.set(f, E - commutator(A, F));
  std::mt19937 rng(13);
  const std::vector<AssocSeries> basis{A, E, F};
  for (int trial = 0; trial < 50; ++trial) {
    const AssocSeries& x = basis[rng() % 3];
    const AssocSeries& y = basis[rng() % 3];
    const int dx = x.degree().value();
    const AssocSeries lhs = d.apply(commutator(x, y));
    const AssocSeries rhs = commutator(d.apply(x), y) + commutator(x, d.apply(y)) * Rational(dx % 2 ? -1 : 1);
    CHECK(lhs == rhs);
  }
  CHECK(d.apply(d.apply(A)).is_zero());
}

TEST_CASE("element JSON round trip") {
  std::mt19937 rng(14);
  const auto gens = testutil::mixed_generators("lcjs");
  GeneratorTable table(gens);
  for (int trial = 0; trial < 20; ++trial) {
    const LieElement x = normalize(testutil::random_element(rng, gens, 3, 5), 4);
    const auto j = element_to_json(x);
    CHECK(element_from_json(j, table) == x);
    CHECK(element_to_json(element_from_json(j, table)).dump() == j.dump());
  }
  const auto bad = nlohmann::ordered_json::parse(R"({"terms":[{"coeff":"1/0","tree":{"gen":"lcjs_0"}}]})");
  CHECK_THROWS_AS(element_from_json(bad, table), Error);
}

TEST_CASE("term limit guards expansion") {
  const std::size_t old = max_terms();
  set_max_terms(10);
  const auto gens = testutil::mixed_generators("lctl");
  AssocSeries s(8);
  for (const auto& g : gens) s += AssocSeries::generator(g, 8);
  CHECK_THROWS_AS(exp_series(s), TermLimitError);
  set_max_terms(old);
}
