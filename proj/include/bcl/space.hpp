// Copyright (c) 2026 the bcl authors
//
// This code is released under the
// Apache License Version 2.0 http://www.apache.org/licenses/.

#ifndef BCL_SPACE_HPP_
#define BCL_SPACE_HPP_

#include <cstdint>
#include <limits>
#include <span>
#include <string>
#include <vector>

#include "bcl/rational.hpp"

namespace bcl {

// An exponent p in [1, inf]. Finite values are stored as exact rationals so
// conjugation and ordering never accumulate rounding error; the reciprocal
// conventions 1/inf = 0 and inf' = 1 are built in.
class ExtExponent {
 public:
  ExtExponent() : finite_(true), value_(1) {}

  static ExtExponent infinity() {
    ExtExponent e;
    e.finite_ = false;
    return e;
  }
  static ExtExponent of(const Rational& r) {
    if (r < Rational(1)) throw std::invalid_argument("ExtExponent: p < 1");
    ExtExponent e;
    e.finite_ = true;
    e.value_ = r;
    return e;
  }
  static ExtExponent of(std::int64_t num, std::int64_t den = 1) {
    return of(Rational(num, den));
  }

  bool is_infinite() const { return !finite_; }
  bool is_one() const { return finite_ && value_ == Rational(1); }

  // Exact rational value; only meaningful for finite exponents.
  const Rational& rational() const {
    if (!finite_) throw std::logic_error("ExtExponent: infinite has no rational value");
    return value_;
  }

  double to_double() const {
    return finite_ ? value_.to_double() : std::numeric_limits<double>::infinity();
  }

  // 1/p with the convention 1/inf = 0.
  double reciprocal() const {
    return finite_ ? Rational(value_.den(), value_.num()).to_double() : 0.0;
  }

  // p' with 1/p + 1/p' = 1; conjugate(1) = inf, conjugate(inf) = 1.
  ExtExponent conjugate() const {
    if (!finite_) return of(Rational(1));
    if (value_ == Rational(1)) return infinity();
    // p = a/b  =>  p' = a/(a-b)
    return of(Rational(value_.num(), value_.num() - value_.den()));
  }

  std::string str() const { return finite_ ? value_.str() : "inf"; }

  // Accepts "inf" / "a" / "a/b".
  static ExtExponent parse(const std::string& text) {
    if (text == "inf" || text == "Inf" || text == "INF") return infinity();
    return of(Rational::parse(text));
  }

  friend bool operator==(const ExtExponent& a, const ExtExponent& b) {
    if (a.finite_ != b.finite_) return false;
    return !a.finite_ || a.value_ == b.value_;
  }
  friend bool operator!=(const ExtExponent& a, const ExtExponent& b) { return !(a == b); }
  friend bool operator<(const ExtExponent& a, const ExtExponent& b) {
    if (!a.finite_) return false;
    if (!b.finite_) return true;
    return a.value_ < b.value_;
  }
  friend bool operator<=(const ExtExponent& a, const ExtExponent& b) { return !(b < a); }

 private:
  bool finite_;
  Rational value_;
};

inline ExtExponent conjugate(const ExtExponent& p) { return p.conjugate(); }

// Validated parameters of the space: theta in (0, 1/4] and the strictly
// increasing exponent family F = {p_1 < ... < p_xi0}. Exponents are 1-indexed
// to match the layer tags: order-k layers exist for 1 <= k < xi0 and the
// unconstrained order-0 layer aggregates with p_xi0.
class SpaceParams {
 public:
  SpaceParams(const Rational& theta, std::vector<ExtExponent> exponents)
      : theta_(theta), exponents_(std::move(exponents)) {}

  const Rational& theta_exact() const { return theta_; }
  double theta() const { return theta_.to_double(); }

  int xi0() const { return static_cast<int>(exponents_.size()); }

  // p_k, 1-indexed.
  const ExtExponent& p(int k) const { return exponents_.at(static_cast<std::size_t>(k) - 1); }
  const ExtExponent& p_last() const { return exponents_.back(); }
  const std::vector<ExtExponent>& exponents() const { return exponents_; }

  bool contains(const ExtExponent& q) const {
    for (const auto& e : exponents_)
      if (e == q) return true;
    return false;
  }

 private:
  Rational theta_;
  std::vector<ExtExponent> exponents_;
};

// Builds validated SpaceParams. Throws std::invalid_argument when theta is
// outside (0, 1/4], fewer than two exponents are given, or the family is not
// strictly increasing within [1, inf].
SpaceParams make_space(const Rational& theta, const std::vector<ExtExponent>& exponents);

// ||values||_{l_p}: the sum for p = 1, the max for p = inf, (sum v^p)^(1/p)
// otherwise. Equals sup{sum c_q v_q : ||c||_{l_p'} <= 1}. Throws on negative
// entries.
double holder_aggregate(std::span<const double> values, const ExtExponent& p);

}  // namespace bcl

#endif  // BCL_SPACE_HPP_
