// Copyright (c) 2026 the bcl authors
//
// This code is released under the
// Apache License Version 2.0 http://www.apache.org/licenses/.

#include "bcl/sequence_lab.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "bcl/rng.hpp"

namespace bcl {

BlockSequence BlockSequence::from_vectors(std::vector<SparseVector> vectors) {
  for (std::size_t i = 0; i < vectors.size(); ++i) {
    if (vectors[i].empty())
      throw std::invalid_argument("BlockSequence: zero vector in sequence");
    if (i > 0 && vectors[i - 1].max_support() >= vectors[i].min_support())
      throw std::invalid_argument("BlockSequence: supports must be successive");
  }
  BlockSequence seq;
  seq.vectors_ = std::move(vectors);
  return seq;
}

BlockSequence random_block_sequence(const SpaceParams& params, int m,
                                    const GapProfile& profile, std::uint64_t seed) {
  if (m < 1) throw std::invalid_argument("random_block_sequence: m must be >= 1");
  Rng rng(seed);
  std::vector<SparseVector> out;
  std::int64_t pos = std::max<std::int64_t>(profile.start, 1);
  for (int i = 0; i < m; ++i) {
    const auto npts = rng.range(profile.min_points, profile.max_points);
    std::vector<Coord> coords;
    for (std::int64_t t = 0; t < npts; ++t) {
      const double mag = 0.25 + 1.75 * rng.unit();
      coords.push_back({pos, mag * static_cast<double>(rng.sign())});
      const std::int64_t intra =
          (profile.kind == GapKind::kTight) ? 1 : rng.range(1, 3);
      pos += intra;
    }
    SparseVector v = SparseVector::from_coords(std::move(coords));
    const double nv = norm(v, params).lower;
    out.push_back(v.scaled(1.0 / nv));

    switch (profile.kind) {
      case GapKind::kTight:
        break;  // pos already one past the last point
      case GapKind::kSpread:
        pos += rng.range(0, 4);
        break;
      case GapKind::kSquared: {
        const std::int64_t last = out.back().max_support();
        const std::int64_t sq = saturating_square(last);
        if (sq >= std::numeric_limits<std::int64_t>::max() - 8)
          throw std::invalid_argument(
              "random_block_sequence: squared gaps overflow; reduce m");
        pos = sq + 1 + rng.range(0, 2);
        break;
      }
    }
  }
  return BlockSequence::from_vectors(std::move(out));
}

BlockSequence average_cascade(const SpaceParams& params, int pieces, int max_block,
                              std::uint64_t seed) {
  if (pieces < 1) throw std::invalid_argument("average_cascade: pieces must be >= 1");
  if (max_block < 1) throw std::invalid_argument("average_cascade: max_block must be >= 1");
  Rng rng(seed);
  std::vector<SparseVector> out;
  std::int64_t pos = 2;
  for (int j = 1; j <= pieces; ++j) {
    const auto block = static_cast<std::int64_t>(std::min(j + 1, max_block));
    std::vector<SparseVector> basis_vectors;
    std::vector<int> indices;
    for (std::int64_t i = 0; i < block; ++i) {
      basis_vectors.push_back(SparseVector::unit(pos + i));
      indices.push_back(static_cast<int>(i));
    }
    const BlockSequence piece_seq = BlockSequence::from_vectors(std::move(basis_vectors));
    out.push_back(build_average(piece_seq, indices, params.p_last(), params).y);

    const std::int64_t last = pos + block - 1;
    const std::int64_t sq = saturating_square(last);
    pos = (sq < std::numeric_limits<std::int64_t>::max() - 8)
              ? sq + 1 + rng.range(0, 2)
              : last + 1'000'000'007LL;
  }
  return BlockSequence::from_vectors(std::move(out));
}

namespace {

std::vector<NormCertificate> normalized_certs(const BlockSequence& seq,
                                              const SpaceParams& params, double slack) {
  std::vector<NormCertificate> certs;
  certs.reserve(static_cast<std::size_t>(seq.size()));
  for (const auto& v : seq.vectors()) {
    certs.push_back(norm(v, params));
    if (std::abs(certs.back().lower - 1.0) > slack)
      throw std::invalid_argument("sequence_lab: block sequence is not normalized");
  }
  return certs;
}

}  // namespace

EstimateReport check_general_estimate(const BlockSequence& seq,
                                      const std::vector<double>& lambdas,
                                      const SpaceParams& params, double tol) {
  if (static_cast<int>(lambdas.size()) != seq.size())
    throw std::invalid_argument("check_general_estimate: lambda/sequence size mismatch");
  const auto certs = normalized_certs(seq, params, 1e-6);

  SparseVector z;
  for (std::size_t j = 0; j < lambdas.size(); ++j)
    z = add(z, seq.at(static_cast<int>(j)).scaled(lambdas[j]));

  std::vector<double> abs_l(lambdas.size());
  for (std::size_t j = 0; j < lambdas.size(); ++j) abs_l[j] = std::abs(lambdas[j]);

  EstimateReport report;
  report.value = norm(z, params).lower;
  report.lower_bound = params.theta() * holder_aggregate(abs_l, params.p_last());
  report.upper_bound = 2.0 * holder_aggregate(abs_l, params.p(1));
  report.lower_ok = report.value >= report.lower_bound - tol;
  report.upper_ok = report.value <= report.upper_bound + tol;
  report.lower_ratio = report.lower_bound > 0 ? report.value / report.lower_bound : 0.0;
  report.upper_ratio = report.upper_bound > 0 ? report.value / report.upper_bound : 0.0;

  const double lnorm = holder_aggregate(abs_l, params.p_last());
  if (lnorm == 0.0) {
    report.witness_value = 0.0;
    report.witness_valid = true;
    report.witness_ok = true;
    return report;
  }

  // theta * sum |l_j|^{p/p'} f_j, scaled to the unit coefficient ball.
  std::vector<double> coeffs;
  std::vector<Functional> children;
  if (params.p_last().is_infinite()) {
    std::size_t jmax = 0;
    for (std::size_t j = 1; j < abs_l.size(); ++j)
      if (abs_l[j] > abs_l[jmax]) jmax = j;
    coeffs.push_back(lambdas[jmax] < 0 ? -1.0 : 1.0);
    children.push_back(certs[jmax].witness);
  } else {
    const double p = params.p_last().to_double();
    for (std::size_t j = 0; j < lambdas.size(); ++j) {
      if (lambdas[j] == 0.0) continue;
      const double c = std::pow(abs_l[j] / lnorm, p - 1.0);
      coeffs.push_back(lambdas[j] < 0 ? -c : c);
      children.push_back(certs[j].witness);
    }
  }
  const Functional f = Functional::node(0, std::nullopt, coeffs, children);
  report.witness_valid = validate(f, params).valid;
  report.witness_value = evaluate(f, z, params);
  report.witness_ok = report.witness_value >= report.lower_bound - tol;
  return report;
}

AverageResult build_average(const BlockSequence& seq, const std::vector<int>& indices,
                            const ExtExponent& p, const SpaceParams& params,
                            double /*tol*/) {
  if (indices.empty()) throw std::invalid_argument("build_average: empty index set");
  for (std::size_t t = 0; t < indices.size(); ++t) {
    if (indices[t] < 0 || indices[t] >= seq.size())
      throw std::invalid_argument("build_average: index out of range");
    if (t > 0 && indices[t - 1] >= indices[t])
      throw std::invalid_argument("build_average: indices must be ascending");
  }
  if (!params.contains(p)) throw std::invalid_argument("build_average: p not in F");

  const auto n = static_cast<std::int64_t>(indices.size());
  SparseVector sum;
  std::vector<Functional> witnesses;
  for (int idx : indices) {
    sum = add(sum, seq.at(idx));
    witnesses.push_back(norm(seq.at(idx), params).witness);
  }

  AverageResult result;
  const double scale = std::pow(static_cast<double>(n), -p.reciprocal());
  result.y_prime = sum.scaled(scale);
  result.y_prime_norm = norm(result.y_prime, params).lower;
  result.y = result.y_prime.scaled(1.0 / result.y_prime_norm);

  if (p == params.p_last()) {
    result.case_tag = 1;
    const double coeff =
        std::pow(1.0 / static_cast<double>(n), params.p_last().conjugate().reciprocal());
    result.g = Functional::node(0, n, std::vector<double>(witnesses.size(), coeff),
                                witnesses);
  } else {
    result.case_tag = 2;
    int k = 0;
    for (int kk = 1; kk < params.xi0(); ++kk)
      if (params.p(kk) == p) k = kk;
    // children must carry sizes and satisfy the very-fast-growing clauses
    std::vector<Functional> children;
    std::int64_t floor_next = 1;
    for (std::size_t q = 0; q < witnesses.size(); ++q) {
      const auto report = validate(witnesses[q], params);
      Functional child = witnesses[q];
      if (!(report.order && *report.order < k && report.size && *report.size >= floor_next))
        child = sized_wrap(witnesses[q], floor_next, params);
      if (q > 0) {
        const std::int64_t prev_max = children.back().max_support();
        if (saturating_square(prev_max) >= child.min_support())
          throw std::invalid_argument(
              "build_average: sequence gaps too small for an order-k companion");
      }
      children.push_back(child);
      floor_next = children.back().max_support() + 1;
    }
    if (static_cast<std::int64_t>(children.size()) > children.front().min_support())
      throw std::invalid_argument("build_average: admissibility fails (#E too large)");
    double coeff = 1.0;
    if (!(k == 1 && params.p(1).is_one()))
      coeff = std::pow(1.0 / static_cast<double>(n), params.p(k).conjugate().reciprocal());
    result.g = Functional::node(k, std::nullopt,
                                std::vector<double>(children.size(), coeff), children);
  }

  const auto greport = validate(result.g, params);
  if (!greport.valid)
    throw std::logic_error("build_average: companion functional failed validation");
  result.g_of_y = evaluate(result.g, result.y, params);
  return result;
}

double fit_loglog_slope(std::span<const double> xs, std::span<const double> ys,
                        double* rms_residual) {
  if (xs.size() != ys.size() || xs.size() < 2)
    throw std::invalid_argument("fit_loglog_slope: need >= 2 points");
  const auto n = static_cast<double>(xs.size());
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    mx += xs[i];
    my += ys[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sxx += (xs[i] - mx) * (xs[i] - mx);
    sxy += (xs[i] - mx) * (ys[i] - my);
  }
  const double slope = sxy / sxx;
  if (rms_residual) {
    const double icept = my - slope * mx;
    double ss = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
      const double r = ys[i] - (icept + slope * xs[i]);
      ss += r * r;
    }
    *rms_residual = std::sqrt(ss / n);
  }
  return slope;
}

GrowthFit estimate_growth_exponent(const BlockSequence& seq, const std::vector<int>& Ks,
                                   const SpaceParams& params) {
  if (Ks.size() < 2)
    throw std::invalid_argument("estimate_growth_exponent: need >= 2 K values");
  GrowthFit fit;
  fit.Ks = Ks;
  for (int K : Ks) {
    if (K < 1 || 2 * K - 1 > seq.size())
      throw std::invalid_argument("estimate_growth_exponent: K exceeds available tail");
    // spread-out selection K <= j_1 < ... < j_K (1-based), here j_t = K + t - 1
    SparseVector z;
    for (int t = 0; t < K; ++t) z = add(z, seq.at(K - 1 + t));
    fit.norms.push_back(norm(z, params).lower);
  }
  std::vector<double> xs, ys;
  for (std::size_t i = 0; i < fit.norms.size(); ++i) {
    xs.push_back(std::log(static_cast<double>(fit.Ks[i])));
    ys.push_back(std::log(fit.norms[i]));
  }
  fit.exponent_hat = fit_loglog_slope(xs, ys, &fit.residual);
  return fit;
}

std::optional<AlphaWitness> alpha_witness_search(const BlockSequence& seq, int k,
                                                 const SpaceParams& params,
                                                 const AlphaBudget& budget) {
  if (k < 1 || k >= params.xi0())
    throw std::invalid_argument("alpha_witness_search: k must satisfy 1 <= k < xi0");
  const int window = std::min(seq.size(), budget.max_vectors);
  if (window == 0) return std::nullopt;

  AlphaWitness witness;
  witness.eps = std::numeric_limits<double>::infinity();
  std::int64_t prev_max = 0;
  for (int j = 0; j < window; ++j) {
    const SparseVector& xj = seq.at(j);
    Interval win = xj.range();
    std::int64_t floor = 1;
    if (j > 0) {
      win.lo = std::max(win.lo, saturating_square(prev_max) + 1);
      floor = prev_max + 1;
    }
    if (win.empty()) return std::nullopt;
    const SizedCertificate cert = sized_best_certificate(xj, win, k, floor, params);
    if (cert.value < budget.floor) return std::nullopt;
    witness.eps = std::min(witness.eps, cert.value);
    witness.functionals.push_back(cert.witness);
    prev_max = cert.witness.max_support();
  }
  return witness;
}

SkipWitness build_skip_witness(const BlockSequence& seq, int K, int k,
                               const SpaceParams& params, double /*tol*/) {
  if (K < 1) throw std::invalid_argument("build_skip_witness: K must be >= 1");
  if (k < 1 || k >= params.xi0())
    throw std::invalid_argument("build_skip_witness: k must satisfy 1 <= k < xi0");
  if (seq.size() < K) throw std::invalid_argument("build_skip_witness: tail too short");

  SparseVector sum;
  std::vector<Functional> witnesses;
  for (int i = 0; i < K; ++i) {
    sum = add(sum, seq.at(i));
    witnesses.push_back(norm(seq.at(i), params).witness);
  }
  const double rk = params.p(k).reciprocal();
  const double rtop = params.p_last().reciprocal();  // 0 when p_xi0 = inf
  const SparseVector y = sum.scaled(std::pow(static_cast<double>(K), -rk));

  SkipWitness out;
  out.y_norm = norm(y, params).lower;
  out.x = y.scaled(1.0 / out.y_norm);
  const double coeff =
      std::pow(1.0 / static_cast<double>(K), params.p_last().conjugate().reciprocal());
  out.f = Functional::node(0, K, std::vector<double>(witnesses.size(), coeff), witnesses);
  out.f_of_x = evaluate(out.f, out.x, params);
  out.bound = (params.theta() / 3.0) * std::pow(static_cast<double>(K), rtop - rk);
  return out;
}

SwitchReport switch_bound_check(const BlockSequence& prefix, int K, int k,
                                const Functional& f, const SpaceParams& params,
                                double tol, std::uint64_t seed) {
  if (K < 1 || K > prefix.size())
    throw std::invalid_argument("switch_bound_check: bad prefix length");
  if (k < 1 || k >= params.xi0())
    throw std::invalid_argument("switch_bound_check: k must satisfy 1 <= k < xi0");
  const auto freport = validate(f, params);
  if (!freport.valid || freport.order != 0 || !freport.size)
    throw std::invalid_argument(
        "switch_bound_check: f must be a valid order-0 functional with a declared size");

  SwitchReport report;
  report.size_m = *freport.size;
  const ExtExponent& pk = params.p(k);

  // 3-domination probe: all interval sums plus seeded random coefficients.
  double worst = 0.0;
  for (int a = 0; a < K; ++a) {
    SparseVector z;
    std::vector<double> ones;
    for (int b = a; b < K; ++b) {
      z = add(z, prefix.at(b));
      ones.push_back(1.0);
      const double ratio = norm(z, params).lower / holder_aggregate(ones, pk);
      worst = std::max(worst, ratio);
    }
  }
  Rng rng(seed);
  for (int trial = 0; trial < 20; ++trial) {
    SparseVector z;
    std::vector<double> abs_a;
    for (int j = 0; j < K; ++j) {
      const double a = (0.1 + 0.9 * rng.unit()) * static_cast<double>(rng.sign());
      z = add(z, prefix.at(j).scaled(a));
      abs_a.push_back(std::abs(a));
    }
    const double ratio = norm(z, params).lower / holder_aggregate(abs_a, pk);
    worst = std::max(worst, ratio);
  }
  report.worst_ratio = worst;
  report.hypothesis_ok = worst <= 3.0 + tol;

  SparseVector sum;
  for (int j = 0; j < K; ++j) sum = add(sum, prefix.at(j));
  const SparseVector x =
      sum.scaled(std::pow(static_cast<double>(K), -pk.reciprocal()));
  report.lhs = std::abs(evaluate(f, x, params));
  const double dr = params.p_last().reciprocal() - pk.reciprocal();
  report.rhs = std::pow(static_cast<double>(K), dr) +
               2.0 * std::pow(static_cast<double>(report.size_m), dr);
  report.bound_ok = report.lhs < report.rhs + tol;
  return report;
}

}  // namespace bcl
