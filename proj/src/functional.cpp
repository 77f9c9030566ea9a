// Copyright (c) 2026 the bcl authors
//
// This code is released under the
// Apache License Version 2.0 http://www.apache.org/licenses/.

#include "bcl/functional.hpp"

#include <cmath>
#include <stdexcept>

namespace bcl {

namespace {

constexpr double kCoeffTol = 1e-12;

}  // namespace

bool operator==(const FunctionalNode& a, const FunctionalNode& b) {
  return a.order == b.order && a.size == b.size && a.coeffs == b.coeffs &&
         a.children == b.children;
}

bool operator==(const Functional& a, const Functional& b) {
  return a.repr_ == b.repr_;
}

bool Functional::has_support() const {
  if (is_basis()) return true;
  for (const auto& c : as_node().children)
    if (c.has_support()) return true;
  return false;
}

std::int64_t Functional::min_support() const {
  if (is_basis()) return leaf().index;
  for (const auto& c : as_node().children)
    if (c.has_support()) return c.min_support();
  throw std::logic_error("Functional: empty support");
}

std::int64_t Functional::max_support() const {
  if (is_basis()) return leaf().index;
  const auto& ch = as_node().children;
  for (auto it = ch.rbegin(); it != ch.rend(); ++it)
    if (it->has_support()) return it->max_support();
  throw std::logic_error("Functional: empty support");
}

Interval Functional::support_range() const {
  if (!has_support()) return Interval{};
  return Interval{min_support(), max_support()};
}

namespace {

struct SubtreeInfo {
  std::optional<int> order;
  std::optional<std::int64_t> size;
  bool has_support = false;
  std::int64_t min_supp = 0;
  std::int64_t max_supp = 0;
  bool is_basis = false;
};

class Validator {
 public:
  Validator(const SpaceParams& params, std::vector<Violation>& out)
      : params_(params), out_(out) {}

  SubtreeInfo check(const Functional& f, const std::string& path, bool is_root) {
    SubtreeInfo info;
    if (f.is_basis()) {
      const auto& leaf = f.leaf();
      if (leaf.index < 1) add(path, "basis index must be >= 1");
      if (leaf.sign != 1 && leaf.sign != -1) add(path, "basis sign must be +-1");
      info.is_basis = true;
      info.has_support = true;
      info.min_supp = info.max_supp = leaf.index;
      return info;
    }

    const auto& node = f.as_node();
    if (node.order != 0 && (node.order < 1 || node.order >= params_.xi0()))
      add(path, "order tag out of range");
    if (node.coeffs.size() != node.children.size()) {
      add(path, "coefficient/child count mismatch");
      return info;
    }
    if (node.children.empty()) {
      // zero functional: allowed as a root-level artifact only
      if (!is_root) add(path, "empty functional used as child");
      return info;
    }

    std::vector<SubtreeInfo> kids;
    kids.reserve(node.children.size());
    for (std::size_t q = 0; q < node.children.size(); ++q) {
      kids.push_back(check(node.children[q],
                           path + "/children[" + std::to_string(q) + "]", false));
    }

    // successive ranges
    for (std::size_t q = 1; q < kids.size(); ++q) {
      if (kids[q - 1].has_support && kids[q].has_support &&
          kids[q - 1].max_supp >= kids[q].min_supp)
        add(path, "children not successive");
    }

    std::int64_t mn = 0, mx = 0;
    for (const auto& k : kids) {
      if (!k.has_support) continue;
      if (!info.has_support) {
        info.has_support = true;
        mn = k.min_supp;
        mx = k.max_supp;
      } else {
        mn = std::min(mn, k.min_supp);
        mx = std::max(mx, k.max_supp);
      }
    }
    info.min_supp = mn;
    info.max_supp = mx;

    const std::size_t d = node.children.size();
    if (node.order == 0) {
      check_order0(node, path);
      info.order = 0;
      info.size = node.size;
    } else {
      check_orderk(node, kids, path);
      info.order = node.order;
      bool all_sized = true;
      std::int64_t min_size = 0;
      for (std::size_t q = 0; q < d; ++q) {
        if (!kids[q].size) {
          all_sized = false;
          break;
        }
        min_size = (q == 0) ? *kids[q].size : std::min(min_size, *kids[q].size);
      }
      if (all_sized) info.size = min_size;
    }
    return info;
  }

 private:
  void add(const std::string& path, const std::string& constraint) {
    out_.push_back({path.empty() ? "/" : path, constraint});
  }

  void check_order0(const FunctionalNode& node, const std::string& path) {
    const ExtExponent pconj = params_.p_last().conjugate();
    const double pc = pconj.to_double();  // finite: p_xi0 > 1
    double ball = 0.0;
    for (double c : node.coeffs) ball += std::pow(std::abs(c), pc);
    if (ball > 1.0 + kCoeffTol) add(path, "order-0 coefficient ball exceeded");

    if (node.size) {
      const std::int64_t n = *node.size;
      if (n < 1) add(path, "declared size must be positive");
      if (static_cast<std::int64_t>(node.children.size()) > n)
        add(path, "declared size smaller than child count");
      const double want = std::pow(1.0 / static_cast<double>(std::max<std::int64_t>(n, 1)),
                                   1.0 / pc);
      for (double c : node.coeffs) {
        if (std::abs(c - want) > kCoeffTol) {
          add(path, "average-form coefficient mismatch");
          break;
        }
      }
    }
  }

  void check_orderk(const FunctionalNode& node, const std::vector<SubtreeInfo>& kids,
                    const std::string& path) {
    const int k = node.order;
    const ExtExponent& pk = params_.p(k);
    if (k == 1 && pk.is_one()) {
      for (double c : node.coeffs) {
        if (std::abs(c) > 1.0 + kCoeffTol) {
          add(path, "order-1 coefficient above 1");
          break;
        }
      }
    } else {
      const double pc = pk.conjugate().to_double();
      double ball = 0.0;
      for (double c : node.coeffs) ball += std::pow(std::abs(c), pc);
      if (ball > 1.0 + kCoeffTol) add(path, "order-k coefficient ball exceeded");
    }
    if (node.size) add(path, "declared size on order-k node");

    for (std::size_t q = 0; q < kids.size(); ++q) {
      const std::string cpath = path + "/children[" + std::to_string(q) + "]";
      if (kids[q].is_basis) {
        add(cpath, "basis functional as order-k child");
        continue;
      }
      if (!kids[q].order || *kids[q].order >= k) add(cpath, "child order not below k");
      if (!kids[q].size) add(cpath, "order-k child lacks a size");
    }

    // admissible: d <= min supp f_1
    if (kids[0].has_support &&
        static_cast<std::int64_t>(kids.size()) > kids[0].min_supp)
      add(path, "admissibility: d > min supp of first child");

    // very fast growing
    for (std::size_t q = 1; q < kids.size(); ++q) {
      if (!kids[q - 1].has_support || !kids[q].has_support) continue;
      if (saturating_square(kids[q - 1].max_supp) >= kids[q].min_supp)
        add(path + "/children[" + std::to_string(q) + "]",
            "very-fast-growing gap: (max supp prev)^2 >= min supp");
      if (kids[q].size && *kids[q].size <= kids[q - 1].max_supp)
        add(path + "/children[" + std::to_string(q) + "]",
            "very-fast-growing size: s(f_q) <= max supp prev");
    }
  }

  const SpaceParams& params_;
  std::vector<Violation>& out_;
};

}  // namespace

ValidationReport validate(const Functional& f, const SpaceParams& params) {
  ValidationReport report;
  Validator v(params, report.violations);
  const SubtreeInfo info = v.check(f, "", true);
  report.valid = report.violations.empty();
  report.order = info.order;
  report.size = info.size;
  return report;
}

double evaluate(const Functional& f, const SparseVector& x, const SpaceParams& params) {
  if (f.is_basis()) {
    const auto& leaf = f.leaf();
    return static_cast<double>(leaf.sign) * x.at(leaf.index);
  }
  const auto& node = f.as_node();
  if (node.children.empty()) return 0.0;
  double sum = 0.0;
  for (std::size_t q = 0; q < node.children.size(); ++q)
    sum += node.coeffs[q] * evaluate(node.children[q], x, params);
  return params.theta() * sum;
}

Functional restrict(const Functional& f, const Interval& window) {
  if (f.is_basis()) {
    if (window.contains(f.leaf().index)) return f;
    return Functional::zero();
  }
  const auto& node = f.as_node();
  std::vector<double> coeffs;
  std::vector<Functional> children;
  for (std::size_t q = 0; q < node.children.size(); ++q) {
    Functional r = restrict(node.children[q], window);
    if (!r.has_support()) continue;
    coeffs.push_back(node.coeffs[q]);
    children.push_back(std::move(r));
  }
  if (children.empty()) return Functional::zero();
  return Functional::node(node.order, node.size, std::move(coeffs), std::move(children));
}

Functional negate_signs(const Functional& f, const std::map<std::int64_t, int>& signs) {
  if (f.is_basis()) {
    const auto& leaf = f.leaf();
    const auto it = signs.find(leaf.index);
    const int flip = (it == signs.end()) ? 1 : it->second;
    return Functional::basis(leaf.index, leaf.sign * flip);
  }
  const auto& node = f.as_node();
  std::vector<Functional> children;
  children.reserve(node.children.size());
  for (const auto& c : node.children) children.push_back(negate_signs(c, signs));
  return Functional::node(node.order, node.size, node.coeffs, std::move(children));
}

Functional sized_wrap(const Functional& f, std::int64_t n, const SpaceParams& params) {
  if (n < 1) throw std::invalid_argument("sized_wrap: size must be positive");
  const double coeff =
      std::pow(1.0 / static_cast<double>(n), params.p_last().conjugate().reciprocal());
  return Functional::node(0, n, {coeff}, {f});
}

}  // namespace bcl
