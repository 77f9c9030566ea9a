#include <cmath>

#include "doctest.h"

#include "bcl/functional.hpp"
#include "bcl/norm_engine.hpp"
#include "bcl/rng.hpp"
#include "bcl/sequence_lab.hpp"

using namespace bcl;

namespace {

SpaceParams space_1_inf() {
  return make_space(Rational(1, 4), {ExtExponent::of(1), ExtExponent::infinity()});
}
SpaceParams space_1_2() {
  return make_space(Rational(1, 4), {ExtExponent::of(1), ExtExponent::of(2)});
}

bool has_violation(const ValidationReport& r, const std::string& needle) {
  for (const auto& v : r.violations)
    if (v.constraint.find(needle) != std::string::npos) return true;
  return false;
}

}  // namespace

TEST_CASE("validate: basis functional") {
  const auto s = space_1_inf();
  const auto r = validate(Functional::basis(1, 1), s);
  CHECK(r.valid);
  CHECK(!r.order);
  CHECK(!r.size);
}

TEST_CASE("validate: order-0 coefficient ball") {
  const auto s = space_1_2();  // p_xi0 = 2, so coefficients live in the l_2 ball
  const auto f = Functional::node(0, std::nullopt, {1.0, 1.0},
                                  {Functional::basis(1), Functional::basis(2)});
  const auto r = validate(f, s);
  CHECK(!r.valid);
  CHECK(has_violation(r, "order-0 coefficient ball"));
}

TEST_CASE("validate: both very-fast-growing clauses located") {
  // order-1 node over size-1 wraps of e*_2 and e*_3: the gap test fails
  // ((max supp f_1)^2 = 4 >= 3) and the size test fails (s(f_2) = 1 <= 2).
  const auto s = space_1_inf();
  const auto w2 = sized_wrap(Functional::basis(2), 1, s);
  const auto w3 = sized_wrap(Functional::basis(3), 1, s);
  const auto f = Functional::node(1, std::nullopt, {1.0, 1.0}, {w2, w3});
  const auto r = validate(f, s);
  CHECK(!r.valid);
  CHECK(r.violations.size() == 2);
  CHECK(has_violation(r, "very-fast-growing gap"));
  CHECK(has_violation(r, "very-fast-growing size"));
}

TEST_CASE("validate: valid order-1 functional and its computed size") {
  const auto s = space_1_inf();
  const auto w2 = sized_wrap(Functional::basis(2), 1, s);
  const auto w5 = sized_wrap(Functional::basis(5), 3, s);
  const auto f = Functional::node(1, std::nullopt, {1.0, 1.0}, {w2, w5});
  const auto r = validate(f, s);
  CHECK(r.valid);
  CHECK(r.order == 1);
  CHECK(r.size == 1);  // min of child sizes
}

TEST_CASE("validate: average form coefficients") {
  const auto s = space_1_inf();  // p'_xi0 = 1, so size-n coefficients are 1/n
  const auto good = Functional::node(0, 2, {0.5, 0.5},
                                     {Functional::basis(1), Functional::basis(2)});
  CHECK(validate(good, s).valid);
  CHECK(validate(good, s).size == 2);

  const auto bad = Functional::node(0, 2, {0.5, 0.25},
                                    {Functional::basis(1), Functional::basis(2)});
  CHECK(has_violation(validate(bad, s), "average-form coefficient"));

  const auto toomany = Functional::node(
      0, 1, {1.0, 1.0}, {Functional::basis(1), Functional::basis(2)});
  CHECK(has_violation(validate(toomany, s), "declared size smaller"));
}

TEST_CASE("validate: zero functional accepted at root, rejected as child") {
  const auto s = space_1_inf();
  CHECK(validate(Functional::zero(), s).valid);
  const auto f = Functional::node(0, std::nullopt, {1.0}, {Functional::zero()});
  CHECK(has_violation(validate(f, s), "empty functional"));
}

TEST_CASE("validate: basis child of order-k node rejected") {
  const auto s = space_1_inf();
  const auto w5 = sized_wrap(Functional::basis(5), 3, s);
  const auto f = Functional::node(1, std::nullopt, {1.0, 1.0},
                                  {Functional::basis(2), w5});
  CHECK(has_violation(validate(f, s), "basis functional as order-k child"));
}

TEST_CASE("validate: admissibility") {
  const auto s = space_1_inf();
  // two children with first support at 1: d = 2 > 1
  const auto w1 = sized_wrap(Functional::basis(1), 1, s);
  const auto w5 = sized_wrap(Functional::basis(5), 2, s);
  const auto f = Functional::node(1, std::nullopt, {1.0, 1.0}, {w1, w5});
  CHECK(has_violation(validate(f, s), "admissibility"));
}

TEST_CASE("evaluate examples") {
  const auto s = space_1_inf();
  CHECK(evaluate(Functional::basis(3), SparseVector::unit(3, 2.0), s) == 2.0);

  const auto wrap = Functional::node(0, std::nullopt, {1.0}, {Functional::basis(1)});
  CHECK(evaluate(wrap, SparseVector::unit(1), s) == doctest::Approx(0.25).epsilon(1e-15));

  const auto avg = Functional::node(0, 2, {0.5, 0.5},
                                    {Functional::basis(1), Functional::basis(2)});
  const auto x = SparseVector::from_coords({{1, 1.0}, {2, 1.0}});
  CHECK(evaluate(avg, x, s) == doctest::Approx(0.25).epsilon(1e-15));
}

TEST_CASE("restrict examples") {
  const auto s = space_1_inf();
  const auto gone = restrict(Functional::basis(5), Interval{1, 4});
  CHECK(gone.is_zero());
  for (std::int64_t j = 1; j <= 8; ++j)
    CHECK(evaluate(gone, SparseVector::unit(j), s) == 0.0);

  const auto avg = Functional::node(0, 2, {0.5, 0.5},
                                    {Functional::basis(1), Functional::basis(2)});
  CHECK(restrict(avg, avg.support_range()) == avg);

  const auto cut = restrict(avg, Interval{2, 2});
  const auto x = SparseVector::from_coords({{1, 1.0}, {2, 1.0}});
  CHECK(evaluate(cut, x, s) == doctest::Approx(0.125).epsilon(1e-15));
  const auto r = validate(cut, s);
  CHECK(r.valid);
  CHECK(r.size == 2);  // declared size carried through the restriction
}

TEST_CASE("restriction keeps membership and never shrinks the size") {
  const auto s = space_1_2();
  Rng rng(21);
  for (int t = 0; t < 40; ++t) {
    std::vector<Coord> coords;
    std::int64_t pos = rng.range(1, 3);
    const auto npts = rng.range(2, 6);
    for (std::int64_t i = 0; i < npts; ++i) {
      coords.push_back({pos, (0.25 + rng.unit()) * static_cast<double>(rng.sign())});
      pos += rng.range(1, 4);
    }
    const auto x = SparseVector::from_coords(coords);
    const auto w = norm(x, s).witness;
    REQUIRE(validate(w, s).valid);

    const auto lo = rng.range(1, pos);
    const auto hi = lo + rng.range(0, pos);
    const auto cut = restrict(w, Interval{lo, hi});
    const auto before = validate(w, s);
    const auto after = validate(cut, s);
    CHECK(after.valid);
    if (before.size && after.size) CHECK(*after.size >= *before.size);
  }
}

TEST_CASE("negate_signs: identity, single flip, action property") {
  const auto s = space_1_inf();
  CHECK(negate_signs(Functional::basis(1), {{1, -1}}) == Functional::basis(1, -1));
  const auto avg = Functional::node(0, 2, {0.5, 0.5},
                                    {Functional::basis(1), Functional::basis(2)});
  CHECK(negate_signs(avg, {}) == avg);

  Rng rng(33);
  for (int t = 0; t < 40; ++t) {
    std::vector<Coord> coords;
    std::int64_t pos = 1;
    const auto npts = rng.range(2, 6);
    for (std::int64_t i = 0; i < npts; ++i) {
      coords.push_back({pos, (0.25 + rng.unit()) * static_cast<double>(rng.sign())});
      pos += rng.range(1, 3);
    }
    const auto x = SparseVector::from_coords(coords);
    const auto f = norm(x, s).witness;

    std::map<std::int64_t, int> sigma;
    std::vector<Coord> flipped;
    for (const auto& c : x.coords()) {
      const int sg = rng.sign();
      sigma[c.index] = sg;
      flipped.push_back({c.index, c.value * sg});
    }
    const auto g = negate_signs(f, sigma);
    CHECK(validate(g, s).valid);
    const auto sx = SparseVector::from_coords(flipped);
    CHECK(evaluate(g, sx, s) == doctest::Approx(evaluate(f, x, s)).epsilon(1e-13));
  }
}

TEST_CASE("closure: engine witnesses survive restriction and sign changes") {
  const auto s = space_1_2();
  Rng rng(55);
  for (int t = 0; t < 25; ++t) {
    std::vector<Coord> coords;
    std::int64_t pos = rng.range(1, 4);
    const auto npts = rng.range(3, 7);
    for (std::int64_t i = 0; i < npts; ++i) {
      coords.push_back({pos, (0.25 + 1.5 * rng.unit()) * static_cast<double>(rng.sign())});
      pos += rng.range(1, 5);
    }
    const auto x = SparseVector::from_coords(coords);
    const auto w = norm(x, s).witness;
    CHECK(validate(w, s).valid);
    CHECK(validate(restrict(w, Interval{2, pos / 2 + 1}), s).valid);
    std::map<std::int64_t, int> sigma;
    for (const auto& c : x.coords()) sigma[c.index] = rng.sign();
    CHECK(validate(negate_signs(w, sigma), s).valid);
  }
}
