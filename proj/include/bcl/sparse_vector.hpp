// Copyright (c) 2026 the bcl authors
//
// This code is released under the
// Apache License Version 2.0 http://www.apache.org/licenses/.

#ifndef BCL_SPARSE_VECTOR_HPP_
#define BCL_SPARSE_VECTOR_HPP_

#include <cstdint>
#include <limits>
#include <stdexcept>
#include <vector>

namespace bcl {

// Closed integer interval [lo, hi]; lo > hi encodes the empty interval.
struct Interval {
  std::int64_t lo = 1;
  std::int64_t hi = 0;

  bool empty() const { return lo > hi; }
  bool contains(std::int64_t i) const { return lo <= i && i <= hi; }
  friend bool operator==(const Interval&, const Interval&) = default;
};

// v^2 clamped to INT64_MAX so very-fast-growing gap tests never overflow.
inline std::int64_t saturating_square(std::int64_t v) {
  if (v >= 3037000499LL) return std::numeric_limits<std::int64_t>::max();
  return v * v;
}

struct Coord {
  std::int64_t index;
  double value;
  friend bool operator==(const Coord&, const Coord&) = default;
};

// Finitely supported vector on positive integer coordinates. Coordinates are
// strictly increasing and values nonzero.
class SparseVector {
 public:
  SparseVector() = default;

  static SparseVector from_coords(std::vector<Coord> coords) {
    for (std::size_t i = 0; i < coords.size(); ++i) {
      if (coords[i].index < 1)
        throw std::invalid_argument("SparseVector: coordinate index must be >= 1");
      if (coords[i].value == 0.0)
        throw std::invalid_argument("SparseVector: zero value in support");
      if (i > 0 && coords[i - 1].index >= coords[i].index)
        throw std::invalid_argument("SparseVector: indices must be strictly increasing");
    }
    SparseVector v;
    v.coords_ = std::move(coords);
    return v;
  }

  static SparseVector unit(std::int64_t j, double value = 1.0) {
    return from_coords({{j, value}});
  }

  const std::vector<Coord>& coords() const { return coords_; }
  std::size_t size() const { return coords_.size(); }
  bool empty() const { return coords_.empty(); }

  std::int64_t min_support() const {
    if (empty()) throw std::logic_error("SparseVector: empty support");
    return coords_.front().index;
  }
  std::int64_t max_support() const {
    if (empty()) throw std::logic_error("SparseVector: empty support");
    return coords_.back().index;
  }

  // Smallest closed interval containing the support; empty for the zero vector.
  Interval range() const {
    if (empty()) return Interval{};
    return Interval{coords_.front().index, coords_.back().index};
  }

  double at(std::int64_t index) const {
    // binary search over the sorted support
    std::size_t lo = 0, hi = coords_.size();
    while (lo < hi) {
      const std::size_t mid = (lo + hi) / 2;
      if (coords_[mid].index < index)
        lo = mid + 1;
      else
        hi = mid;
    }
    if (lo < coords_.size() && coords_[lo].index == index) return coords_[lo].value;
    return 0.0;
  }

  SparseVector restricted(const Interval& window) const {
    std::vector<Coord> out;
    for (const auto& c : coords_)
      if (window.contains(c.index)) out.push_back(c);
    SparseVector v;
    v.coords_ = std::move(out);
    return v;
  }

  SparseVector scaled(double factor) const {
    if (factor == 0.0) return SparseVector{};
    std::vector<Coord> out = coords_;
    for (auto& c : out) c.value *= factor;
    SparseVector v;
    v.coords_ = std::move(out);
    return v;
  }

  friend SparseVector add(const SparseVector& a, const SparseVector& b) {
    std::vector<Coord> out;
    std::size_t i = 0, j = 0;
    while (i < a.coords_.size() || j < b.coords_.size()) {
      if (j == b.coords_.size() ||
          (i < a.coords_.size() && a.coords_[i].index < b.coords_[j].index)) {
        out.push_back(a.coords_[i++]);
      } else if (i == a.coords_.size() || b.coords_[j].index < a.coords_[i].index) {
        out.push_back(b.coords_[j++]);
      } else {
        const double s = a.coords_[i].value + b.coords_[j].value;
        if (s != 0.0) out.push_back({a.coords_[i].index, s});
        ++i;
        ++j;
      }
    }
    SparseVector v;
    v.coords_ = std::move(out);
    return v;
  }

  friend bool operator==(const SparseVector&, const SparseVector&) = default;

 private:
  std::vector<Coord> coords_;
};

}  // namespace bcl

#endif  // BCL_SPARSE_VECTOR_HPP_
