// Copyright (c) 2026 the bcl authors
//
// This code is released under the
// Apache License Version 2.0 http://www.apache.org/licenses/.

#include "bcl/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace bcl {

namespace {

// Plain recursive enumerator over explicit tree shapes. A shape lives on an
// exact list of support points; children split the list into consecutive
// parts, so every range/gap/size clause is evaluated on true supports. Two
// dominance facts thin the search without affecting the max: a node with a
// single child and free coefficient is worth theta*c*child <= child, and an
// equal-coefficient average never beats the Hoelder-optimal node of the same
// shape, so sized averages are enumerated only where a size is required.
class Enumerator {
 public:
  Enumerator(const SpaceParams& params, std::vector<std::int64_t> pts,
             std::vector<double> av, std::int64_t max_size)
      : params_(params), pts_(std::move(pts)), av_(std::move(av)), max_size_(max_size) {
    theta_ = params.theta();
    inv_conj_top_ = params.p_last().conjugate().reciprocal();
  }

  // Best unconstrained tree on exactly the points sel[lo..hi).
  double best(const std::vector<int>& sel, int lo, int hi, int depth) {
    double out = 0.0;
    if (hi - lo == 1) out = av_[static_cast<std::size_t>(sel[static_cast<std::size_t>(lo)])];
    if (depth < 2) return out;

    std::vector<std::pair<int, int>> parts;
    enumerate_compositions(lo, hi, 2, parts, [&](const std::vector<std::pair<int, int>>& ps) {
      // order-0, Hoelder-optimal coefficients
      std::vector<double> vals;
      vals.reserve(ps.size());
      for (const auto& [a, b] : ps) vals.push_back(best(sel, a, b, depth - 1));
      out = std::max(out, theta_ * holder_aggregate(vals, params_.p_last()));
      // order-k layers
      for (int k = 1; k < params_.xi0(); ++k) {
        const double v = orderk_value(sel, ps, depth, k, 1);
        out = std::max(out, v);
      }
    });
    return out;
  }

  // Best tree of order < k with size >= s on exactly sel[lo..hi); -1 when the
  // depth budget cannot produce one.
  double best_sized(const std::vector<int>& sel, int lo, int hi, int depth, int k,
                    std::int64_t s) {
    if (depth < 2) return -1.0;
    double out = -1.0;
    std::vector<std::pair<int, int>> parts;
    enumerate_compositions(lo, hi, 1, parts, [&](const std::vector<std::pair<int, int>>& ps) {
      const auto d = static_cast<std::int64_t>(ps.size());
      // order-0 average form, every admissible declared size tried
      if (std::max(d, s) <= max_size_) {
        double sum = 0.0;
        for (const auto& [a, b] : ps) sum += best(sel, a, b, depth - 1);
        for (std::int64_t n = std::max(d, s); n <= max_size_; ++n) {
          const double val =
              theta_ * std::pow(1.0 / static_cast<double>(n), inv_conj_top_) * sum;
          out = std::max(out, val);
        }
      }
      // order-k' with every child size >= s
      if (ps.size() >= 2) {
        for (int k2 = 1; k2 < k; ++k2) out = std::max(out, orderk_value(sel, ps, depth, k2, s));
      }
    });
    return out;
  }

 private:
  std::int64_t pt(const std::vector<int>& sel, int pos) const {
    return pts_[static_cast<std::size_t>(sel[static_cast<std::size_t>(pos)])];
  }

  // Value of an order-k node over the given parts, or -1 when the
  // admissibility / very-fast-growing clauses fail on these true supports.
  double orderk_value(const std::vector<int>& sel,
                      const std::vector<std::pair<int, int>>& ps, int depth, int k,
                      std::int64_t s_floor) {
    if (ps.size() < 2) return -1.0;
    if (static_cast<std::int64_t>(ps.size()) > pt(sel, ps[0].first)) return -1.0;
    std::vector<double> vals;
    vals.reserve(ps.size());
    for (std::size_t q = 0; q < ps.size(); ++q) {
      std::int64_t floor_q = s_floor;
      if (q > 0) {
        const std::int64_t prev_max = pt(sel, ps[q - 1].second - 1);
        if (saturating_square(prev_max) >= pt(sel, ps[q].first)) return -1.0;
        floor_q = std::max(floor_q, prev_max + 1);
      }
      const double v = best_sized(sel, ps[q].first, ps[q].second, depth - 1, k, floor_q);
      if (v < 0.0) return -1.0;
      vals.push_back(v);
    }
    return theta_ * holder_aggregate(vals, params_.p(k));
  }

  // All splits of [lo, hi) into at least min_parts consecutive nonempty parts.
  template <typename Fn>
  void enumerate_compositions(int lo, int hi, int min_parts,
                              std::vector<std::pair<int, int>>& parts, Fn&& fn) {
    if (lo == hi) {
      if (static_cast<int>(parts.size()) >= min_parts) fn(parts);
      return;
    }
    for (int mid = lo + 1; mid <= hi; ++mid) {
      parts.emplace_back(lo, mid);
      enumerate_compositions(mid, hi, min_parts, parts, fn);
      parts.pop_back();
    }
  }

  const SpaceParams& params_;
  std::vector<std::int64_t> pts_;
  std::vector<double> av_;
  std::int64_t max_size_;
  double theta_;
  double inv_conj_top_;
};

}  // namespace

double brute_force_norm(const SparseVector& x, const SpaceParams& params,
                        int max_depth, std::int64_t max_size) {
  if (x.size() > 8)
    throw std::invalid_argument("brute_force_norm: support larger than 8");
  if (max_depth < 1 || max_depth > 4)
    throw std::invalid_argument("brute_force_norm: max_depth must be in [1, 4]");
  if (max_size < 1) throw std::invalid_argument("brute_force_norm: max_size must be >= 1");
  if (x.empty()) return 0.0;

  // W is closed under sign changes, so the maximum over trees with signed
  // leaves equals the maximum over |x| with positive leaves.
  std::vector<std::int64_t> pts;
  std::vector<double> av;
  for (const auto& c : x.coords()) {
    pts.push_back(c.index);
    av.push_back(std::abs(c.value));
  }
  const int n = static_cast<int>(pts.size());
  Enumerator en(params, std::move(pts), std::move(av), max_size);

  double out = 0.0;
  for (unsigned mask = 1; mask < (1u << n); ++mask) {
    std::vector<int> sel;
    for (int i = 0; i < n; ++i)
      if (mask & (1u << i)) sel.push_back(i);
    out = std::max(out, en.best(sel, 0, static_cast<int>(sel.size()), max_depth));
  }
  return out;
}

}  // namespace bcl
