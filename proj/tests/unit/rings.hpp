// Small rings shared by the unit tests.
#pragma once

#include <string>
#include <vector>

#include "symgrowth/algebra.hpp"

namespace rings {

using namespace symgrowth;

inline AlgebraPtr make(const std::vector<std::string>& names, const std::vector<std::string>& rels,
                       Scalar p = kDefaultModulus) {
  std::vector<Polynomial> fs;
  for (const auto& r : rels) fs.push_back(parse_polynomial(r, names, p));
  return GradedAlgebra::build(names.size(), p, fs, std::nullopt, names);
}

inline AlgebraPtr r1() { return make({"x"}, {"x^2"}); }
inline AlgebraPtr r2() { return make({"x", "y"}, {"x^2", "y^2"}); }
inline AlgebraPtr r3() { return make({"x", "y"}, {"x^2", "xy", "y^2"}); }
inline AlgebraPtr r4() { return make({"x", "y", "z"}, {"x^2", "y^2", "yz", "z^2"}); }
inline AlgebraPtr r5() { return make({"x"}, {"x^3"}); }
inline AlgebraPtr r6() { return make({"x", "y"}, {"x^2", "y^3"}); }

}  // namespace rings
