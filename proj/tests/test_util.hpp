#pragma once

#include <random>
#include <string>
#include <vector>

#include "dgla/lie_element.hpp"

namespace testutil {

/// Four generators of degrees -1, 0, 0, 1 with a common name prefix.
inline std::vector<dgla::Generator> mixed_generators(const std::string& prefix) {
  const int degrees[] = {-1, 0, 0, 1};
  std::vector<dgla::Generator> out;
  for (int i = 0; i < 4; ++i) out.push_back(dgla::Generator::make(prefix + "_" + std::to_string(i), degrees[i]));
  return out;
}

inline std::vector<dgla::Generator> even_generators(const std::string& prefix, int n) {
  std::vector<dgla::Generator> out;
  for (int i = 0; i < n; ++i) out.push_back(dgla::Generator::make(prefix + "_" + std::to_string(i), 0));
  return out;
}

inline dgla::Rational random_coeff(std::mt19937& rng) {
  std::uniform_int_distribution<int> num(-5, 5), den(1, 4);
  int p = 0;
  while (p == 0) p = num(rng);
  dgla::Rational q(p, den(rng));
  q.canonicalize();
  return q;
}

inline dgla::BracketTree random_tree(std::mt19937& rng, const std::vector<dgla::Generator>& gens, int brackets) {
  if (brackets == 0) return dgla::BracketTree::leaf(gens[rng() % gens.size()]);
  const int left = static_cast<int>(rng() % static_cast<unsigned>(brackets));
  return dgla::BracketTree::node(random_tree(rng, gens, left), random_tree(rng, gens, brackets - 1 - left));
}

/// Random element with up to `terms` trees of at most `max_brackets` brackets.
inline dgla::LieElement random_element(std::mt19937& rng, const std::vector<dgla::Generator>& gens, int max_brackets,
                                       int terms) {
  dgla::LieElement x;
  for (int i = 0; i < terms; ++i) {
    x.add_term(random_tree(rng, gens, static_cast<int>(rng() % static_cast<unsigned>(max_brackets + 1))),
               random_coeff(rng));
  }
  return x;
}

/// Random single tree with a random coefficient, hence homogeneous.
inline dgla::LieElement random_homogeneous(std::mt19937& rng, const std::vector<dgla::Generator>& gens,
                                           int max_brackets) {
  return dgla::LieElement::tree(random_tree(rng, gens, static_cast<int>(rng() % static_cast<unsigned>(max_brackets + 1))),
                                random_coeff(rng));
}

/// Random degree-0 element: combinations of even generators with up to `max_brackets` brackets.
inline dgla::LieElement random_even(std::mt19937& rng, const std::vector<dgla::Generator>& gens, int max_brackets,
                                    int terms) {
  return random_element(rng, gens, max_brackets, terms);
}

}  // namespace testutil
