#include <cmath>

#include "doctest.h"

#include "bcl/norm_engine.hpp"
#include "bcl/oracle.hpp"
#include "bcl/rng.hpp"

using namespace bcl;

namespace {

SpaceParams space_1_inf() {
  return make_space(Rational(1, 4), {ExtExponent::of(1), ExtExponent::infinity()});
}
SpaceParams space_1_2() {
  return make_space(Rational(1, 4), {ExtExponent::of(1), ExtExponent::of(2)});
}
SpaceParams space_3layer() {
  return make_space(Rational(1, 4),
                    {ExtExponent::of(1), ExtExponent::of(3, 2), ExtExponent::of(3)});
}

SparseVector random_vector(Rng& rng, int max_points, std::int64_t max_coord) {
  const auto npts = rng.range(1, max_points);
  std::vector<std::int64_t> idx;
  while (static_cast<std::int64_t>(idx.size()) < npts) {
    const auto c = rng.range(1, max_coord);
    bool seen = false;
    for (auto v : idx) seen = seen || v == c;
    if (!seen) idx.push_back(c);
  }
  std::sort(idx.begin(), idx.end());
  std::vector<Coord> coords;
  for (auto i : idx)
    coords.push_back({i, (0.25 + 1.75 * rng.unit()) * static_cast<double>(rng.sign())});
  return SparseVector::from_coords(coords);
}

}  // namespace

TEST_CASE("basis vectors are exactly normalized with basis witnesses") {
  for (const auto& s : {space_1_inf(), space_1_2(), space_3layer()}) {
    for (std::int64_t j : {1, 2, 7, 50}) {
      const auto cert = norm(SparseVector::unit(j), s);
      CHECK(cert.lower == 1.0);
      CHECK(cert.upper == 1.0);
      CHECK(cert.witness == Functional::basis(j, 1));
    }
  }
}

TEST_CASE("empty vector yields the zero certificate") {
  const auto cert = norm(SparseVector{}, space_1_inf());
  CHECK(cert.lower == 0.0);
  CHECK(cert.upper == 0.0);
  CHECK(cert.witness.is_zero());
}

TEST_CASE("F={1,inf}: e_2 + e_3 has norm 1 (squared gap blocks the order-1 pair)") {
  const auto s = space_1_inf();
  const auto x = SparseVector::from_coords({{2, 1.0}, {3, 1.0}});
  const auto cert = norm(x, s);
  CHECK(cert.lower == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(cert.upper == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("F={1,inf}: e_3 + e_10, norm 1 and the two-child order-1 value 5/64") {
  const auto s = space_1_inf();
  const auto x = SparseVector::from_coords({{3, 1.0}, {10, 1.0}});
  const auto cert = norm(x, s);
  CHECK(cert.lower == doctest::Approx(1.0).epsilon(1e-12));

  // hand-built best multi-child order-1 functional: theta(theta + theta/4)
  const auto g1 = sized_wrap(Functional::basis(3), 1, s);
  const auto g2 = sized_wrap(Functional::basis(10), 4, s);
  const auto f = Functional::node(1, std::nullopt, {1.0, 1.0}, {g1, g2});
  REQUIRE(validate(f, s).valid);
  CHECK(evaluate(f, x, s) == doctest::Approx(5.0 / 64.0).epsilon(1e-14));
  CHECK(evaluate(f, x, s) <= cert.lower);
}

TEST_CASE("F={1,2}: seventeen flat entries beat the sup norm") {
  const auto s = space_1_2();
  std::vector<Coord> coords;
  for (std::int64_t j = 1; j <= 17; ++j) coords.push_back({j, 1.0});
  const auto cert = norm(SparseVector::from_coords(coords), s);
  CHECK(cert.lower == doctest::Approx(0.25 * std::sqrt(17.0)).epsilon(1e-13));
  CHECK(cert.witness.is_node());
  CHECK(validate(cert.witness, s).order == 0);

  // sixteen flat entries tie the sup norm instead
  coords.pop_back();
  const auto cert16 = norm(SparseVector::from_coords(coords), s);
  CHECK(cert16.lower == doctest::Approx(1.0).epsilon(1e-13));
}

TEST_CASE("sized_best examples") {
  const auto s = space_1_inf();
  const auto e1 = SparseVector::unit(1);
  CHECK(sized_best(e1, Interval{1, 1}, 1, 1, s) == doctest::Approx(0.25).epsilon(1e-14));
  CHECK(sized_best(e1, Interval{1, 1}, 1, 4, s) ==
        doctest::Approx(1.0 / 16.0).epsilon(1e-14));
  CHECK(sized_best(e1, Interval{5, 9}, 1, 1, s) == 0.0);

  const auto cert = sized_best_certificate(e1, Interval{1, 1}, 1, 4, s);
  const auto rep = validate(cert.witness, s);
  CHECK(rep.valid);
  CHECK(rep.size.has_value());
  CHECK(*rep.size >= 4);
  CHECK(evaluate(cert.witness, e1, s) == doctest::Approx(cert.value).epsilon(1e-13));
}

TEST_CASE("best_fixed_size_average") {
  const auto s = space_1_inf();
  const auto cert = best_fixed_size_average(SparseVector::unit(1), 2, s);
  CHECK(cert.value == doctest::Approx(0.125).epsilon(1e-14));
  const auto rep = validate(cert.witness, s);
  CHECK(rep.valid);
  CHECK(rep.size == 2);
}

TEST_CASE("homogeneity and sign invariance") {
  Rng rng(101);
  const auto s = space_1_2();
  for (int t = 0; t < 30; ++t) {
    const auto x = random_vector(rng, 8, 30);
    const double base = norm(x, s).lower;
    const double c = 0.25 + 3.0 * rng.unit();
    CHECK(norm(x.scaled(c), s).lower == doctest::Approx(c * base).epsilon(1e-12));

    std::vector<Coord> flipped;
    for (const auto& co : x.coords())
      flipped.push_back({co.index, co.value * static_cast<double>(rng.sign())});
    CHECK(norm(SparseVector::from_coords(flipped), s).lower ==
          doctest::Approx(base).epsilon(1e-12));
  }
}

TEST_CASE("restriction monotonicity, solidity, triangle inequality") {
  Rng rng(202);
  for (const auto& s : {space_1_inf(), space_1_2()}) {
    for (int t = 0; t < 20; ++t) {
      const auto x = random_vector(rng, 8, 30);
      const double nx = norm(x, s).lower;

      const auto lo = rng.range(1, 30);
      const auto hi = lo + rng.range(0, 30);
      CHECK(norm(x.restricted(Interval{lo, hi}), s).lower <= nx + 1e-12);

      std::vector<Coord> shrunk;
      for (const auto& co : x.coords())
        shrunk.push_back({co.index, co.value * (0.1 + 0.9 * rng.unit())});
      CHECK(norm(SparseVector::from_coords(shrunk), s).lower <= nx + 1e-9);

      const auto y = random_vector(rng, 6, 30);
      CHECK(norm(add(x, y), s).lower <= nx + norm(y, s).lower + 1e-9);
    }
  }
}

TEST_CASE("witnesses validate and attain the lower bound") {
  Rng rng(303);
  for (const auto& s : {space_1_inf(), space_1_2(), space_3layer()}) {
    for (int t = 0; t < 20; ++t) {
      const auto x = random_vector(rng, 9, 60);
      const auto cert = norm(x, s);
      const auto rep = validate(cert.witness, s);
      CHECK(rep.valid);
      CHECK(evaluate(cert.witness, x, s) == cert.lower);
      CHECK(cert.lower <= cert.upper);
      CHECK(cert.upper - cert.lower <= 1e-9);
    }
  }
}

TEST_CASE("oracle equivalence on small supports") {
  Rng rng(404);
  for (const auto& s : {space_1_inf(), space_1_2(), space_3layer()}) {
    for (int t = 0; t < 40; ++t) {
      const auto x = random_vector(rng, 6, 12);
      const double dp = norm(x, s).lower;
      const double bf = brute_force_norm(x, s, 4, 13);
      CHECK(dp == doctest::Approx(bf).epsilon(1e-9));
    }
  }
}

TEST_CASE("oracle guards and scaling") {
  const auto s = space_1_inf();
  CHECK(brute_force_norm(SparseVector::unit(1), s, 4, 8) == 1.0);
  CHECK(brute_force_norm(SparseVector::unit(4, 2.0), s, 4, 8) == 2.0);
  CHECK(brute_force_norm(SparseVector{}, s, 4, 8) == 0.0);

  std::vector<Coord> coords;
  for (std::int64_t j = 1; j <= 9; ++j) coords.push_back({j, 1.0});
  CHECK_THROWS_AS(brute_force_norm(SparseVector::from_coords(coords), s, 4, 8),
                  std::invalid_argument);
  CHECK_THROWS_AS(brute_force_norm(SparseVector::unit(1), s, 5, 8),
                  std::invalid_argument);
}

TEST_CASE("node budget produces an explicit error") {
  const auto s = space_1_2();
  std::vector<Coord> coords;
  for (std::int64_t j = 1; j <= 30; ++j) coords.push_back({j, 1.0});
  EngineOptions opts;
  opts.node_budget = 10;
  CHECK_THROWS_AS(norm(SparseVector::from_coords(coords), s, opts),
                  BudgetExceededError);
}

TEST_CASE("deterministic across repeated runs") {
  Rng rng(505);
  const auto s = space_1_2();
  const auto x = random_vector(rng, 8, 25);
  const auto a = norm(x, s);
  const auto b = norm(x, s);
  CHECK(a.lower == b.lower);
  CHECK(a.upper == b.upper);
  CHECK(a.witness == b.witness);
  CHECK(a.stats.nodes_explored == b.stats.nodes_explored);
}
