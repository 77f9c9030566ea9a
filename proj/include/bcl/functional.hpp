// Copyright (c) 2026 the bcl authors
//
// This code is released under the
// Apache License Version 2.0 http://www.apache.org/licenses/.

#ifndef BCL_FUNCTIONAL_HPP_
#define BCL_FUNCTIONAL_HPP_

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "bcl/space.hpp"
#include "bcl/sparse_vector.hpp"

namespace bcl {

class Functional;

struct BasisLeaf {
  std::int64_t index;
  int sign;  // +1 or -1
  friend bool operator==(const BasisLeaf&, const BasisLeaf&) = default;
};

struct FunctionalNode {
  int order = 0;                          // 0, or k with 1 <= k < xi0
  std::optional<std::int64_t> size;       // declared size, order-0 average form only
  std::vector<double> coeffs;
  std::vector<Functional> children;
};

// A signed weighted tree representing an element of the norming set W.
// Leaves are +-e*_j; an inner node of order zeta acts as theta * sum c_q f_q.
// The empty node is the zero functional, kept as a representation artifact
// for restrictions.
class Functional {
 public:
  Functional() : repr_(FunctionalNode{}) {}

  static Functional basis(std::int64_t index, int sign = 1) {
    Functional f;
    f.repr_ = BasisLeaf{index, sign};
    return f;
  }

  static Functional node(int order, std::optional<std::int64_t> size,
                         std::vector<double> coeffs, std::vector<Functional> children) {
    Functional f;
    f.repr_ = FunctionalNode{order, size, std::move(coeffs), std::move(children)};
    return f;
  }

  static Functional zero() { return Functional(); }

  bool is_basis() const { return std::holds_alternative<BasisLeaf>(repr_); }
  bool is_node() const { return std::holds_alternative<FunctionalNode>(repr_); }
  bool is_zero() const {
    return is_node() && std::get<FunctionalNode>(repr_).children.empty();
  }

  const BasisLeaf& leaf() const { return std::get<BasisLeaf>(repr_); }
  const FunctionalNode& as_node() const { return std::get<FunctionalNode>(repr_); }

  bool has_support() const;
  std::int64_t min_support() const;  // pre: has_support()
  std::int64_t max_support() const;  // pre: has_support()
  Interval support_range() const;

  friend bool operator==(const Functional& a, const Functional& b);

 private:
  std::variant<BasisLeaf, FunctionalNode> repr_;
};

bool operator==(const FunctionalNode& a, const FunctionalNode& b);

struct Violation {
  std::string path;        // e.g. "/children[2]/children[0]"
  std::string constraint;  // short name of the violated clause
};

struct ValidationReport {
  bool valid = false;
  std::optional<int> order;          // 0 or k; absent for basis leaves and zero
  std::optional<std::int64_t> size;  // defined sizes only
  std::vector<Violation> violations;
};

// Membership check for the norming set W under the given parameters. Invalid
// trees yield valid=false with located violations; order and size are
// computed bottom-up (order-k size = min child size).
ValidationReport validate(const Functional& f, const SpaceParams& params);

// Action of f on x: leaves give sign * x[index], nodes theta * sum c_q f_q(x).
double evaluate(const Functional& f, const SparseVector& x, const SpaceParams& params);

// Restriction f|_E: children with empty restricted support are dropped,
// coefficients of survivors retained. Same order tag and declared size.
Functional restrict(const Functional& f, const Interval& window);

// Flips leaf signs: the result g satisfies |g| = |f| and g(sigma x) = f(x)
// where sigma is the given index -> +-1 map (+1 when absent).
Functional negate_signs(const Functional& f, const std::map<std::int64_t, int>& signs);

// theta * (1/n)^{1/p'_xi0} * f as an order-0 functional of declared size n.
// This is the single wrap that gives any member of W a defined size.
Functional sized_wrap(const Functional& f, std::int64_t n, const SpaceParams& params);

}  // namespace bcl

#endif  // BCL_FUNCTIONAL_HPP_
