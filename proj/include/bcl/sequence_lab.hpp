// Copyright (c) 2026 the bcl authors
//
// This code is released under the
// Apache License Version 2.0 http://www.apache.org/licenses/.

#ifndef BCL_SEQUENCE_LAB_HPP_
#define BCL_SEQUENCE_LAB_HPP_

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "bcl/functional.hpp"
#include "bcl/norm_engine.hpp"
#include "bcl/space.hpp"
#include "bcl/sparse_vector.hpp"

namespace bcl {

// Finite block sequence: max supp x_i < min supp x_{i+1}.
class BlockSequence {
 public:
  BlockSequence() = default;
  static BlockSequence from_vectors(std::vector<SparseVector> vectors);

  const std::vector<SparseVector>& vectors() const { return vectors_; }
  const SparseVector& at(int i) const { return vectors_.at(static_cast<std::size_t>(i)); }
  int size() const { return static_cast<int>(vectors_.size()); }

 private:
  std::vector<SparseVector> vectors_;
};

enum class GapKind {
  kTight,    // consecutive supports
  kSpread,   // small random gaps
  kSquared,  // squared gaps, ready for very-fast-growing functionals
};

struct GapProfile {
  GapKind kind = GapKind::kSpread;
  int min_points = 1;
  int max_points = 3;
  std::int64_t start = 2;
};

// m normalized vectors with successive supports; deterministic per seed.
BlockSequence random_block_sequence(const SpaceParams& params, int m,
                                    const GapProfile& profile, std::uint64_t seed);

// Case-1 averaging pieces over fresh basis vectors: piece j is the
// normalized (#E_j)^{-1/p_xi0} average of #E_j basis vectors with #E_j
// growing up to max_block, supports separated by squared gaps while they fit
// in 64 bits (additive jumps once they would overflow).
BlockSequence average_cascade(const SpaceParams& params, int pieces, int max_block,
                              std::uint64_t seed);

struct EstimateReport {
  double value = 0.0;
  double lower_bound = 0.0;
  double upper_bound = 0.0;
  bool lower_ok = false;
  bool upper_ok = false;
  double lower_ratio = 0.0;  // value / lower_bound (0 when bound is 0)
  double upper_ratio = 0.0;  // value / upper_bound
  double witness_value = 0.0;
  bool witness_valid = false;
  bool witness_ok = false;
};

// Checks theta ||lambda||_{p_xi0} <= ||sum lambda_j x_j|| <= 2 ||lambda||_{p_1}
// and builds the explicit lower witness theta * sum |l_j|^{p/p'} f_j from the
// per-vector norming functionals. Throws on unnormalized input.
EstimateReport check_general_estimate(const BlockSequence& seq,
                                      const std::vector<double>& lambdas,
                                      const SpaceParams& params, double tol = 1e-9);

struct AverageResult {
  SparseVector y_prime;
  SparseVector y;
  Functional g = Functional::zero();
  double g_of_y = 0.0;
  double y_prime_norm = 0.0;
  int case_tag = 1;  // 1: order-0 companion (p = p_xi0); 2: order-k companion
};

// y' = (#E)^{-1/p} sum_{i in E} x_i, y = y'/||y'||, and the companion
// functional g built from engine norming witnesses: declared size #E for
// p = p_xi0, an order-k node over sized wraps otherwise.
AverageResult build_average(const BlockSequence& seq, const std::vector<int>& indices,
                            const ExtExponent& p, const SpaceParams& params,
                            double tol = 1e-9);

struct GrowthFit {
  std::vector<int> Ks;
  std::vector<double> norms;
  double exponent_hat = 0.0;
  double residual = 0.0;  // rms residual of the log-log fit
};

// Norms of sum_{t<=K} x_{j_t} with K <= j_1 < ... < j_K; the least-squares
// slope of log norm against log K estimates 1/p of the spreading model.
GrowthFit estimate_growth_exponent(const BlockSequence& seq, const std::vector<int>& Ks,
                                   const SpaceParams& params);

// Ordinary least squares slope of ys against xs; writes the rms residual.
double fit_loglog_slope(std::span<const double> xs, std::span<const double> ys,
                        double* rms_residual);

struct AlphaBudget {
  int max_vectors = 1 << 20;  // window length to search
  double floor = 0.05;        // give up when the best value decays below this
};

struct AlphaWitness {
  std::vector<Functional> functionals;
  double eps = 0.0;
};

// Finite witness that the alpha_{<k} index is positive at this scale: a very
// fast growing sequence (f_j) of order < k with ran f_j inside ran x_j and
// |f_j(x_j)| >= eps. Absence of a witness is a valid outcome (nullopt).
std::optional<AlphaWitness> alpha_witness_search(const BlockSequence& seq, int k,
                                                 const SpaceParams& params,
                                                 const AlphaBudget& budget);

struct SkipWitness {
  SparseVector x;
  Functional f = Functional::zero();
  double f_of_x = 0.0;
  double bound = 0.0;  // (theta/3) K^{1/p_xi0 - 1/p_k}
  double y_norm = 0.0;
};

// Lemma-style pair: x normalized in the span of the first K vectors and an
// order-0 functional f of declared size K with f(x) >= bound when ||y|| <= 3.
SkipWitness build_skip_witness(const BlockSequence& seq, int K, int k,
                               const SpaceParams& params, double tol = 1e-9);

struct SwitchReport {
  bool hypothesis_ok = false;  // prefix 3-dominated by the l_{p_k}^K basis
  double worst_ratio = 0.0;
  std::int64_t size_m = 0;
  double lhs = 0.0;
  double rhs = 0.0;  // K^{1/p_xi0-1/p_k} + 2 m^{1/p_xi0-1/p_k}
  bool bound_ok = false;
};

// Checks |f(K^{-1/p_k} sum x_j)| against the switch bound for an order-0
// functional f of declared size m. Hypothesis failure and bound violation are
// reported in separate fields.
SwitchReport switch_bound_check(const BlockSequence& prefix, int K, int k,
                                const Functional& f, const SpaceParams& params,
                                double tol = 1e-9, std::uint64_t seed = 0);

}  // namespace bcl

#endif  // BCL_SEQUENCE_LAB_HPP_
