// Copyright (c) 2026 the bcl authors
//
// This code is released under the
// Apache License Version 2.0 http://www.apache.org/licenses/.

#include "bcl/space.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace bcl {

SpaceParams make_space(const Rational& theta, const std::vector<ExtExponent>& exponents) {
  if (theta <= Rational(0) || theta > Rational(1, 4))
    throw std::invalid_argument("make_space: theta must lie in (0, 1/4]");
  if (exponents.size() < 2)
    throw std::invalid_argument("make_space: need at least two exponents");
  for (std::size_t i = 0; i + 1 < exponents.size(); ++i) {
    if (!(exponents[i] < exponents[i + 1]))
      throw std::invalid_argument("make_space: exponents must be strictly increasing");
  }
  return SpaceParams(theta, exponents);
}

double holder_aggregate(std::span<const double> values, const ExtExponent& p) {
  for (double v : values) {
    if (v < 0.0) throw std::domain_error("holder_aggregate: negative value");
  }
  if (values.empty()) return 0.0;
  if (p.is_infinite()) {
    double best = 0.0;
    for (double v : values) best = std::max(best, v);
    return best;
  }
  if (p.is_one()) {
    double sum = 0.0;
    for (double v : values) sum += v;
    return sum;
  }
  const double pd = p.to_double();
  double sum = 0.0;
  for (double v : values) sum += std::pow(v, pd);
  return std::pow(sum, 1.0 / pd);
}

}  // namespace bcl
