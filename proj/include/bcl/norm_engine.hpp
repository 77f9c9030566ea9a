// Copyright (c) 2026 the bcl authors
//
// This code is released under the
// Apache License Version 2.0 http://www.apache.org/licenses/.

#ifndef BCL_NORM_ENGINE_HPP_
#define BCL_NORM_ENGINE_HPP_

#include <cstdint>
#include <stdexcept>
#include <string>

#include "bcl/functional.hpp"
#include "bcl/space.hpp"
#include "bcl/sparse_vector.hpp"

namespace bcl {

struct EngineOptions {
  double tol = 1e-9;                       // absolute gap tolerance on the certificate
  std::uint64_t node_budget = 10'000'000;  // cap on explored subproblems/transitions
};

struct EngineStats {
  std::size_t memo_entries = 0;
  std::uint64_t nodes_explored = 0;
  double wall_ms = 0.0;
};

// Output of norm(): a validated witness attaining `lower` and a certified
// upper bound from the exhaustive partition enumeration.
struct NormCertificate {
  double lower = 0.0;
  double upper = 0.0;
  Functional witness = Functional::zero();
  EngineStats stats;
};

class BudgetExceededError : public std::runtime_error {
 public:
  BudgetExceededError(const std::string& what, double best_lower, Interval at)
      : std::runtime_error(what), best_lower(best_lower), at(at) {}
  double best_lower;  // best certified value before the budget ran out
  Interval at;        // interval being explored when the budget ran out
};

// ||x|| = sup{|f(x)| : f in W} by memoized dynamic programming over
// successive interval partitions. Deterministic for fixed inputs; the empty
// vector yields the zero certificate.
NormCertificate norm(const SparseVector& x, const SpaceParams& params,
                     const EngineOptions& opts = {});

// sup of f(x|_window) over f in W of order < k with defined size >= min_size.
double sized_best(const SparseVector& x, const Interval& window, int k,
                  std::int64_t min_size, const SpaceParams& params,
                  const EngineOptions& opts = {});

struct SizedCertificate {
  double value = 0.0;
  Functional witness = Functional::zero();
};

// sized_best together with an attaining witness.
SizedCertificate sized_best_certificate(const SparseVector& x, const Interval& window,
                                        int k, std::int64_t min_size,
                                        const SpaceParams& params,
                                        const EngineOptions& opts = {});

// Best order-0 functional of declared size exactly n acting on x.
SizedCertificate best_fixed_size_average(const SparseVector& x, std::int64_t n,
                                         const SpaceParams& params,
                                         const EngineOptions& opts = {});

}  // namespace bcl

#endif  // BCL_NORM_ENGINE_HPP_
