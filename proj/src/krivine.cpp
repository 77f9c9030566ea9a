// Copyright (c) 2026 the bcl authors
//
// This code is released under the
// Apache License Version 2.0 http://www.apache.org/licenses/.

#include "bcl/krivine.hpp"

#include <cmath>

#include "bcl/functional.hpp"

namespace bcl {

namespace {

double ipow(std::int64_t base, double expo) {
  return std::pow(static_cast<double>(base), expo);
}

}  // namespace

GapResult locate_gap(const ExtExponent& p, const SpaceParams& params) {
  if (params.contains(p))
    throw PInFamilyError("locate_gap: p belongs to F, there is no gap");
  if (p < params.p(1) || params.p_last() < p) return GapResult{GapResult::kOutside, 0};
  for (int k = 1; k < params.xi0(); ++k) {
    if (params.p(k) < p && p < params.p(k + 1)) return GapResult{GapResult::kInterior, k};
  }
  throw std::logic_error("locate_gap: unreachable");
}

KrivineConstants compute_constants(const ExtExponent& p, const SpaceParams& params,
                                   const KrivineOptions& opts) {
  const GapResult gap = locate_gap(p, params);
  if (gap.kind != GapResult::kInterior)
    throw std::invalid_argument(
        "compute_constants: p outside [p_1, p_xi0]; see envelope_constants");
  const int k = gap.k;
  const double theta = params.theta();
  const double rp = p.reciprocal();
  const double rk1 = params.p(k + 1).reciprocal();
  const double mg = opts.margin;

  // minimal N with N^{1/p} > 2 + theta (N-2)^{1/p} and N^{rk1-rp} < 1 - 2 theta
  std::int64_t N = 0;
  for (std::int64_t cand = 2; cand <= opts.n_scan_max; ++cand) {
    const bool n1 = ipow(cand, rp) > 2.0 + theta * ipow(cand - 2, rp) + mg;
    const bool n2 = ipow(cand, rk1 - rp) < 1.0 - 2.0 * theta - mg;
    if (n1 && n2) {
      N = cand;
      break;
    }
  }
  if (N == 0) throw GridExhaustedError("compute_constants: no N found in scan range");

  // maximal eps on the grid {2^-i}
  double eps = -1.0;
  for (int i = 1; i <= opts.eps_grid_max_i; ++i) {
    const double e = std::ldexp(1.0, -i);
    const double u = 1.0 + e;
    const bool e1 = ipow(N, rp) / u > 2.0 + u * theta * ipow(N - 2, rp) + mg;
    const bool e2 = ipow(N, rp) > u * u * ipow(N - 1, rp) + mg;
    const bool e3 = ipow(N, rk1 - rp) < 1.0 / (u * u) - 2.0 * theta - mg;
    if (e1 && e2 && e3) {
      eps = e;
      break;
    }
  }
  if (eps < 0.0)
    throw GridExhaustedError("compute_constants: eps grid exhausted; refine the grid");

  KrivineConstants c;
  c.p = p;
  c.k = k;
  c.N = N;
  c.eps = eps;
  c.Theta = ipow(N, rp) / (1.0 + eps) - (1.0 + eps) * ipow(N - 1, rp);

  // minimal M with M^{1/p_k} Theta > (1+eps) M^{1/p}
  const double rpk = params.p(k).reciprocal();
  const double a = rpk - rp;  // > 0
  const double target = (1.0 + eps) / c.Theta;
  std::int64_t M0 = 1;
  if (target > 1.0)
    M0 = static_cast<std::int64_t>(std::floor(std::pow(target, 1.0 / a)));
  std::int64_t M = 0;
  for (std::int64_t cand = std::max<std::int64_t>(1, M0 - 2);
       cand <= opts.m_scan_max; ++cand) {
    if (ipow(cand, rpk) * c.Theta > (1.0 + eps) * ipow(cand, rp) + mg) {
      M = cand;
      break;
    }
  }
  if (M == 0) throw GridExhaustedError("compute_constants: no M found in scan range");
  c.M = M;
  c.K = (N - 1) * M + 1;
  return c;
}

std::vector<IneqCheck> verify_constants(const KrivineConstants& c,
                                        const SpaceParams& params, double margin) {
  const double theta = params.theta();
  const double rp = c.p.reciprocal();
  const double rk1 = params.p(c.k + 1).reciprocal();
  const double rpk = params.p(c.k).reciprocal();
  const double u = 1.0 + c.eps;

  std::vector<IneqCheck> checks;
  auto gt = [&](std::string name, double lhs, double rhs) {
    checks.push_back({std::move(name), lhs, rhs, lhs > rhs + margin, lhs - rhs});
  };
  auto lt = [&](std::string name, double lhs, double rhs) {
    checks.push_back({std::move(name), lhs, rhs, lhs < rhs - margin, rhs - lhs});
  };

  gt("N1: N^{1/p} > 2 + theta (N-2)^{1/p}", ipow(c.N, rp),
     2.0 + theta * ipow(c.N - 2, rp));
  lt("N2: N^{1/p_{k+1}-1/p} < 1 - 2 theta", ipow(c.N, rk1 - rp), 1.0 - 2.0 * theta);
  gt("E1: N^{1/p}/(1+e) > 2 + (1+e) theta (N-2)^{1/p}", ipow(c.N, rp) / u,
     2.0 + u * theta * ipow(c.N - 2, rp));
  gt("E2: N^{1/p} > (1+e)^2 (N-1)^{1/p}", ipow(c.N, rp), u * u * ipow(c.N - 1, rp));
  lt("E3: N^{1/p_{k+1}-1/p} < (1+e)^{-2} - 2 theta", ipow(c.N, rk1 - rp),
     1.0 / (u * u) - 2.0 * theta);
  gt("Theta > 0", c.Theta, 0.0);
  gt("M: M^{1/p_k} Theta > (1+e) M^{1/p}", ipow(c.M, rpk) * c.Theta,
     u * ipow(c.M, rp));
  checks.push_back({"K = (N-1)M + 1", static_cast<double>(c.K),
                    static_cast<double>((c.N - 1) * c.M + 1),
                    c.K == (c.N - 1) * c.M + 1, 0.0});
  return checks;
}

EnvelopeConstants envelope_constants(const ExtExponent& p, const SpaceParams& params,
                                     double margin) {
  const GapResult gap = locate_gap(p, params);
  if (gap.kind != GapResult::kOutside)
    throw std::invalid_argument("envelope_constants: p lies inside [p_1, p_xi0]");

  EnvelopeConstants out;
  out.p = p;
  out.eps = 0.5;
  const double u = 1.0 + out.eps;
  const double theta = params.theta();
  if (params.p_last() < p) {
    // ||sum x_j|| >= theta K^{1/p_xi0} beats (1+eps) K^{1/p} eventually
    out.above = true;
    const double a = params.p_last().reciprocal() - p.reciprocal();  // > 0
    std::int64_t K = 1;
    while (theta * ipow(K, a) <= u + margin) ++K;
    out.K = K;
  } else {
    // ||sum x_j|| <= 2 K^{1/p_1} undercuts K^{1/p}/(1+eps) eventually
    out.above = false;
    const double a = p.reciprocal() - params.p(1).reciprocal();  // > 0
    std::int64_t K = 1;
    while (ipow(K, a) <= 2.0 * u + margin) ++K;
    out.K = K;
  }
  return out;
}

OrderFilterReport order_filter_check(const SparseVector& x_avg, std::int64_t /*N*/,
                                     double eps, int k, const SpaceParams& params) {
  OrderFilterReport report;
  report.threshold = 1.0 / (1.0 + eps);
  const NormCertificate cert = norm(x_avg, params);
  report.value = cert.lower;
  if (report.value < report.threshold) return report;  // hypothesis unrealized
  report.threshold_met = true;
  const auto wreport = validate(cert.witness, params);
  report.witness_order = wreport.order;
  report.order_ok =
      wreport.order.has_value() && *wreport.order >= 1 && *wreport.order <= k;
  return report;
}

}  // namespace bcl
