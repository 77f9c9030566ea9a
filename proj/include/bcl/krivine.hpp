// Copyright (c) 2026 the bcl authors
//
// This code is released under the
// Apache License Version 2.0 http://www.apache.org/licenses/.

#ifndef BCL_KRIVINE_HPP_
#define BCL_KRIVINE_HPP_

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "bcl/norm_engine.hpp"
#include "bcl/space.hpp"
#include "bcl/sparse_vector.hpp"

namespace bcl {

struct GapResult {
  enum Kind { kInterior, kOutside } kind = kOutside;
  int k = 0;  // p_k < p < p_{k+1} when interior
};

class PInFamilyError : public std::invalid_argument {
 public:
  explicit PInFamilyError(const std::string& what) : std::invalid_argument(what) {}
};

class GridExhaustedError : public std::runtime_error {
 public:
  explicit GridExhaustedError(const std::string& what) : std::runtime_error(what) {}
};

// Finds k with p_k < p < p_{k+1}, or kOutside when p lies outside
// [p_1, p_xi0]. Throws PInFamilyError when p is in F.
GapResult locate_gap(const ExtExponent& p, const SpaceParams& params);

// Explicit constants showing no length-K block sequence is (1+eps)-equivalent
// to the l_p^K basis:
//   (N1) N^{1/p} > 2 + theta (N-2)^{1/p}
//   (N2) N^{1/p_{k+1}} / N^{1/p} < 1 - 2 theta
//   (E1) N^{1/p}/(1+eps) > 2 + (1+eps) theta (N-2)^{1/p}
//   (E2) N^{1/p} > (1+eps)^2 (N-1)^{1/p}
//   (E3) N^{1/p_{k+1}} / N^{1/p} < 1/(1+eps)^2 - 2 theta
//   Theta = N^{1/p}/(1+eps) - (1+eps)(N-1)^{1/p} > 0
//   (M)  M^{1/p_k} Theta > (1+eps) M^{1/p}
//   K = (N-1)M + 1
struct KrivineConstants {
  ExtExponent p;
  int k = 0;
  std::int64_t N = 0;
  double eps = 0.0;
  double Theta = 0.0;
  std::int64_t M = 0;
  std::int64_t K = 0;
};

struct KrivineOptions {
  double margin = 1e-12;      // every inequality must hold by at least this
  int eps_grid_max_i = 40;    // eps scanned over {2^-1, ..., 2^-eps_grid_max_i}
  std::int64_t n_scan_max = 100'000'000;
  std::int64_t m_scan_max = 1'000'000'000'000;
};

// Minimal N, then maximal grid eps, then minimal M satisfying all of the
// above. Throws GridExhaustedError when no grid eps works and PInFamilyError
// when p is in F; p outside [p_1, p_xi0] is rejected with invalid_argument
// (use envelope_constants for that regime).
KrivineConstants compute_constants(const ExtExponent& p, const SpaceParams& params,
                                   const KrivineOptions& opts = {});

struct IneqCheck {
  std::string name;
  double lhs = 0.0;
  double rhs = 0.0;
  bool pass = false;
  double margin = 0.0;  // lhs-vs-rhs slack in the direction of the inequality
};

// Re-evaluates every defining inequality of the constants with margins.
std::vector<IneqCheck> verify_constants(const KrivineConstants& c,
                                        const SpaceParams& params,
                                        double margin = 1e-12);

// For p outside [p_1, p_xi0] the general block-sequence envelope already
// rules out (1+eps)-equivalence once K is large enough; this computes such a
// pair explicitly.
struct EnvelopeConstants {
  ExtExponent p;
  bool above = false;  // true: p > p_xi0, lower envelope violated; else upper
  double eps = 0.0;
  std::int64_t K = 0;
};

EnvelopeConstants envelope_constants(const ExtExponent& p, const SpaceParams& params,
                                     double margin = 1e-12);

struct OrderFilterReport {
  bool threshold_met = false;
  double value = 0.0;      // engine norm of x_avg
  double threshold = 0.0;  // 1/(1+eps)
  std::optional<int> witness_order;
  bool order_ok = false;  // witness is a node of order in [1, k]
};

// Obtains the engine's norming witness for x_avg; when its value reaches
// 1/(1+eps) the witness order is reported and checked to lie in [1, k].
OrderFilterReport order_filter_check(const SparseVector& x_avg, std::int64_t N,
                                     double eps, int k, const SpaceParams& params);

}  // namespace bcl

#endif  // BCL_KRIVINE_HPP_
