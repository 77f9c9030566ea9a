// Copyright (c) 2026 the bcl authors
//
// This code is released under the
// Apache License Version 2.0 http://www.apache.org/licenses/.

#include "bcl/norm_engine.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <unordered_map>
#include <vector>

namespace bcl {

namespace {

// The solver works over the support points of |x|. A subproblem is an index
// interval [i..j] plus a mode: unconstrained (any f in W) or sized (order < k,
// size >= s). Children of a node are assigned consecutive blocks of support
// points; all side conditions of the norming set only couple a block to its
// predecessor, so a left-to-right scan enumerates every partition exactly.
// Blocks are scored conservatively at their extremes; the branch whose blocks
// equal the witness ranges scores it exactly, so the maximum over branches is
// the true supremum.
class Solver {
 public:
  Solver(const SparseVector& x, const SpaceParams& params, const EngineOptions& opts,
         const std::vector<std::int64_t>& extra_floors)
      : params_(params), opts_(opts) {
    theta_ = params.theta();
    const ExtExponent& top = params.p_last();
    top_inf_ = top.is_infinite();
    p_top_ = top_inf_ ? 0.0 : top.to_double();
    inv_conj_top_ = top.conjugate().reciprocal();
    nk_ = params.xi0() - 1;
    pk_.assign(static_cast<std::size_t>(nk_) + 1, 0.0);
    pk_one_.assign(static_cast<std::size_t>(nk_) + 1, false);
    for (int k = 1; k <= nk_; ++k) {
      pk_[static_cast<std::size_t>(k)] = params.p(k).to_double();
      pk_one_[static_cast<std::size_t>(k)] = params.p(k).is_one();
    }

    for (const auto& c : x.coords()) {
      pts_.push_back(c.index);
      av_.push_back(std::abs(c.value));
      sg_.push_back(c.value < 0 ? -1 : 1);
    }
    n_ = static_cast<int>(pts_.size());
    if (n_ > 4000)
      throw std::invalid_argument("norm engine: support larger than 4000 points");

    thresholds_.push_back(1);
    for (int e = 0; e < n_; ++e) thresholds_.push_back(pts_[e] + 1);
    for (std::int64_t s : extra_floors) thresholds_.push_back(s);
    std::sort(thresholds_.begin(), thresholds_.end());
    thresholds_.erase(std::unique(thresholds_.begin(), thresholds_.end()),
                      thresholds_.end());
    sid_one_ = sid_of(1);
  }

  int points() const { return n_; }
  int sid_of(std::int64_t s) const {
    const auto it = std::lower_bound(thresholds_.begin(), thresholds_.end(), s);
    if (it == thresholds_.end() || *it != s)
      throw std::logic_error("norm engine: unknown size threshold");
    return static_cast<int>(it - thresholds_.begin());
  }

  double value_unconstrained() { return u(0, n_ - 1); }
  Functional witness_unconstrained() { return wit_u(0, n_ - 1); }

  double value_sized(int k, std::int64_t s) { return sv(0, n_ - 1, k, sid_of(s)); }
  Functional witness_sized(int k, std::int64_t s) {
    return wit_s(0, n_ - 1, k, sid_of(s));
  }

  // Best order-0 functional of declared size exactly n (average form).
  SizedCertificate fixed_size_average(std::int64_t n) {
    const int maxd = static_cast<int>(std::min<std::int64_t>(n, n_));
    double best = -1.0;
    int bestd = 1;
    const double coeff = std::pow(1.0 / static_cast<double>(n), inv_conj_top_);
    for (int d = 1; d <= maxd; ++d) {
      const double val = theta_ * coeff * tile_sum(0, n_ - 1, d);
      if (val > best) {
        best = val;
        bestd = d;
      }
    }
    SizedCertificate cert;
    cert.value = best;
    cert.witness = build_average(0, n_ - 1, n, bestd);
    return cert;
  }

  std::size_t memo_entries() const {
    return u_val_.size() + s_val_.size() + chain_.size() + b_val_.size() + h_val_.size();
  }
  std::uint64_t nodes_explored() const { return nodes_; }

 private:
  enum UKind { kBase = 0, kTiling0 = 1, kChain = 2 };
  struct UChoice {
    int kind;
    int a = 0;  // kBase: point; kTiling0: first block end; kChain: first block start
    int b = 0;  // kChain: first block end
    int k = 0;  // kChain: layer
  };
  enum SKind { kAvg = 0, kSChain = 1 };
  struct SChoice {
    int kind;
    std::int64_t n = 1;  // kAvg: declared size
    int d = 1;           // kAvg: block count
    int k2 = 0;          // kSChain: layer
    int a = 0;           // kSChain: first block start
    int b = 0;           // kSChain: first block end
  };
  struct ChainEntry {
    double val;
    int b;
    int e;
    bool cont;
  };
  struct IntEntry {
    double val;
    int e;
  };

  static std::uint64_t key2(int i, int j) {
    return (static_cast<std::uint64_t>(i) << 12) | static_cast<std::uint64_t>(j);
  }
  static std::uint64_t key4(int i, int j, int k, int sid) {
    return (((key2(i, j) << 6) | static_cast<std::uint64_t>(k)) << 12) |
           static_cast<std::uint64_t>(sid);
  }
  static std::uint64_t key_chain(int k, int e, int j, int rem, int sid) {
    std::uint64_t key = static_cast<std::uint64_t>(k);
    key = (key << 12) | static_cast<std::uint64_t>(e);
    key = (key << 12) | static_cast<std::uint64_t>(j);
    key = (key << 12) | static_cast<std::uint64_t>(rem);
    key = (key << 12) | static_cast<std::uint64_t>(sid);
    return key;
  }
  static std::uint64_t key3(int i, int j, int d) {
    return (key2(i, j) << 12) | static_cast<std::uint64_t>(d);
  }

  void bump() {
    if (++nodes_ > opts_.node_budget) {
      double base = 0.0;
      for (double v : av_) base = std::max(base, v);
      throw BudgetExceededError("norm engine: node budget exceeded", base,
                                Interval{pts_.front(), pts_.back()});
    }
  }

  double pow_layer(int k, double v) const {
    return pk_one_[static_cast<std::size_t>(k)] ? v
                                                : std::pow(v, pk_[static_cast<std::size_t>(k)]);
  }
  double root_layer(int k, double s) const {
    return pk_one_[static_cast<std::size_t>(k)]
               ? s
               : std::pow(s, 1.0 / pk_[static_cast<std::size_t>(k)]);
  }

  // Unconstrained best over f in W supported within [pts_[i], pts_[j]].
  double u(int i, int j) {
    const auto key = key2(i, j);
    if (const auto it = u_val_.find(key); it != u_val_.end()) return it->second;
    bump();

    UChoice choice{kBase, i, 0, 0};
    double best = av_[static_cast<std::size_t>(i)];
    for (int m = i + 1; m <= j; ++m) {
      if (av_[static_cast<std::size_t>(m)] > best) {
        best = av_[static_cast<std::size_t>(m)];
        choice = {kBase, m, 0, 0};
      }
    }

    // Order-0 nodes with Hoelder-optimal coefficients over d >= 2 blocks. For
    // p_xi0 = inf the aggregate is a max over blocks, never above the base.
    if (!top_inf_ && j > i) {
      double best_sum = -1.0;
      int best_e = -1;
      for (int e = i; e < j; ++e) {
        const double s = std::pow(u(i, e), p_top_) + h(e + 1, j);
        if (s > best_sum) {
          best_sum = s;
          best_e = e;
        }
      }
      const double val = theta_ * std::pow(best_sum, 1.0 / p_top_);
      if (val > best) {
        best = val;
        choice = {kTiling0, best_e, 0, 0};
      }
    }

    // Order-k nodes. d = 1 is never optimal here (theta*c*f(x) < f(x)), so
    // only chains of >= 2 blocks are scanned.
    for (int k = 1; k <= nk_; ++k) {
      for (int b = i; b <= j; ++b) {
        const std::int64_t dmax =
            std::min<std::int64_t>(pts_[static_cast<std::size_t>(b)], j - b + 1);
        if (dmax < 2) continue;
        for (int e = b; e < j; ++e) {
          const double v1 = sv(b, e, k, sid_one_);
          const int rem = static_cast<int>(std::min<std::int64_t>(dmax - 1, j - e));
          const double rest = chain_req(k, e, j, rem, sid_one_);
          if (rest < 0.0) continue;
          const double val = theta_ * root_layer(k, pow_layer(k, v1) + rest);
          if (val > best) {
            best = val;
            choice = {kChain, b, e, k};
          }
        }
      }
    }

    u_val_.emplace(key, best);
    u_choice_.emplace(key, choice);
    return best;
  }

  // Best sum of u(block)^p_top over tilings of [i..j] (one or more blocks).
  double h(int i, int j) {
    const auto key = key2(i, j);
    if (const auto it = h_val_.find(key); it != h_val_.end()) return it->second.val;
    bump();
    double best = std::pow(u(i, j), p_top_);
    int best_e = j;
    for (int e = i; e < j; ++e) {
      const double s = std::pow(u(i, e), p_top_) + h(e + 1, j);
      if (s > best) {
        best = s;
        best_e = e;
      }
    }
    h_val_.emplace(key, IntEntry{best, best_e});
    return best;
  }

  // Best sum of u(block) over tilings of [i..j] into exactly d blocks.
  double tile_sum(int i, int j, int d) {
    if (d == 1) return u(i, j);
    const auto key = key3(i, j, d);
    if (const auto it = b_val_.find(key); it != b_val_.end()) return it->second.val;
    bump();
    double best = -1.0;
    int best_e = -1;
    for (int e = i; e <= j - (d - 1); ++e) {
      const double s = u(i, e) + tile_sum(e + 1, j, d - 1);
      if (s > best) {
        best = s;
        best_e = e;
      }
    }
    b_val_.emplace(key, IntEntry{best, best_e});
    return best;
  }

  // sup of f(x) over f of order < k with size >= thresholds_[sid], supported
  // within [pts_[i], pts_[j]].
  double sv(int i, int j, int k, int sid) {
    const auto key = key4(i, j, k, sid);
    if (const auto it = s_val_.find(key); it != s_val_.end()) return it->second;
    bump();
    const std::int64_t s = thresholds_[static_cast<std::size_t>(sid)];

    // Order-0 averages theta * (1/n)^{1/p'_xi0} * sum over d blocks. Boosting
    // n beyond max(s, d) only shrinks the coefficient, so n = max(s, d).
    SChoice choice{kAvg, 1, 1, 0, 0, 0};
    double best = -1.0;
    for (int d = 1; d <= j - i + 1; ++d) {
      const std::int64_t n = std::max<std::int64_t>(s, d);
      const double val = theta_ *
                         std::pow(1.0 / static_cast<double>(n), inv_conj_top_) *
                         tile_sum(i, j, d);
      if (val > best) {
        best = val;
        choice = {kAvg, n, d, 0, 0, 0};
      }
    }

    // Order-k' nodes, 1 <= k' < k, with every child size >= s. d = 1 is
    // dominated by the child itself.
    for (int k2 = 1; k2 < k; ++k2) {
      for (int b = i; b <= j; ++b) {
        const std::int64_t dmax =
            std::min<std::int64_t>(pts_[static_cast<std::size_t>(b)], j - b + 1);
        if (dmax < 2) continue;
        for (int e = b; e < j; ++e) {
          const double v1 = sv(b, e, k2, sid);
          const int rem = static_cast<int>(std::min<std::int64_t>(dmax - 1, j - e));
          const double rest = chain_req(k2, e, j, rem, sid);
          if (rest < 0.0) continue;
          const double val = theta_ * root_layer(k2, pow_layer(k2, v1) + rest);
          if (val > best) {
            best = val;
            choice = {kSChain, 1, 1, k2, b, e};
          }
        }
      }
    }

    s_val_.emplace(key, best);
    s_choice_.emplace(key, choice);
    return best;
  }

  // Best additional sum of sv(block)^p_k over >= 1 further blocks after a
  // block ending at index e, inside (e..j], with at most rem more blocks and
  // child floors max(thresholds_[sid0], previous block end + 1). Returns -1
  // when no further block is placeable.
  double chain_req(int k, int e, int j, int rem, int sid0) {
    rem = std::min(rem, j - e);
    if (rem < 1) return -1.0;
    const auto key = key_chain(k, e, j, rem, sid0);
    if (const auto it = chain_.find(key); it != chain_.end()) return it->second.val;
    bump();

    const std::int64_t gap = saturating_square(pts_[static_cast<std::size_t>(e)]);
    const std::int64_t floor_next =
        std::max(thresholds_[static_cast<std::size_t>(sid0)],
                 pts_[static_cast<std::size_t>(e)] + 1);
    const int sidn = sid_of(floor_next);

    double best = -1.0;
    int best_b = -1, best_e = -1;
    bool best_cont = false;
    for (int b = e + 1; b <= j; ++b) {
      if (pts_[static_cast<std::size_t>(b)] <= gap) continue;
      for (int e2 = b; e2 <= j; ++e2) {
        const double term = pow_layer(k, sv(b, e2, k, sidn));
        double tail = 0.0;
        bool cont = false;
        if (rem - 1 >= 1 && e2 < j) {
          const double t2 = chain_req(k, e2, j, rem - 1, sid0);
          if (t2 > 0.0) {
            tail = t2;
            cont = true;
          }
        }
        if (term + tail > best) {
          best = term + tail;
          best_b = b;
          best_e = e2;
          best_cont = cont;
        }
      }
    }
    chain_.emplace(key, ChainEntry{best, best_b, best_e, best_cont});
    return best;
  }

  // ---- witness reconstruction ----

  static std::vector<double> holder_coeffs(const std::vector<double>& vals, double p) {
    double sum = 0.0;
    for (double v : vals) sum += std::pow(v, p);
    const double vnorm = std::pow(sum, 1.0 / p);
    std::vector<double> out;
    out.reserve(vals.size());
    for (double v : vals) out.push_back(std::pow(v / vnorm, p - 1.0));
    return out;
  }

  Functional wit_u(int i, int j) {
    const UChoice ch = u_choice_.at(key2(i, j));
    if (ch.kind == kBase) {
      const auto m = static_cast<std::size_t>(ch.a);
      return Functional::basis(pts_[m], sg_[m]);
    }
    if (ch.kind == kTiling0) {
      std::vector<std::pair<int, int>> blocks;
      blocks.emplace_back(i, ch.a);
      int a = ch.a + 1;
      while (true) {
        const IntEntry en = h_val_.at(key2(a, j));
        blocks.emplace_back(a, en.e);
        if (en.e == j) break;
        a = en.e + 1;
      }
      std::vector<double> vals;
      std::vector<Functional> children;
      for (const auto& [bb, ee] : blocks) {
        vals.push_back(u(bb, ee));
        children.push_back(wit_u(bb, ee));
      }
      return Functional::node(0, std::nullopt, holder_coeffs(vals, p_top_),
                              std::move(children));
    }
    // kChain
    return build_chain(ch.k, ch.a, ch.b, j, sid_one_);
  }

  Functional wit_s(int i, int j, int k, int sid) {
    const SChoice ch = s_choice_.at(key4(i, j, k, sid));
    if (ch.kind == kAvg) return build_average(i, j, ch.n, ch.d);
    return build_chain(ch.k2, ch.a, ch.b, j, sid);
  }

  Functional build_average(int i, int j, std::int64_t n, int d) {
    std::vector<std::pair<int, int>> blocks;
    int a = i;
    int left = d;
    while (left > 1) {
      const IntEntry en = b_val_.at(key3(a, j, left));
      blocks.emplace_back(a, en.e);
      a = en.e + 1;
      --left;
    }
    blocks.emplace_back(a, j);
    const double coeff = std::pow(1.0 / static_cast<double>(n), inv_conj_top_);
    std::vector<double> coeffs(blocks.size(), coeff);
    std::vector<Functional> children;
    for (const auto& [bb, ee] : blocks) children.push_back(wit_u(bb, ee));
    return Functional::node(0, n, std::move(coeffs), std::move(children));
  }

  // Assembles the order-k node whose first block is [b..e] and whose further
  // blocks follow the stored chain decisions.
  Functional build_chain(int k, int b, int e, int j, int sid0) {
    struct Blk {
      int b, e, sid;
    };
    std::vector<Blk> blocks;
    blocks.push_back({b, e, sid0});
    const std::int64_t dmax =
        std::min<std::int64_t>(pts_[static_cast<std::size_t>(b)], j - b + 1);
    int rem = static_cast<int>(std::min<std::int64_t>(dmax - 1, j - e));
    int cur = e;
    while (true) {
      rem = std::min(rem, j - cur);
      const ChainEntry en = chain_.at(key_chain(k, cur, j, rem, sid0));
      const std::int64_t floor_next =
          std::max(thresholds_[static_cast<std::size_t>(sid0)],
                   pts_[static_cast<std::size_t>(cur)] + 1);
      blocks.push_back({en.b, en.e, sid_of(floor_next)});
      if (!en.cont) break;
      cur = en.e;
      --rem;
    }
    std::vector<double> vals;
    std::vector<Functional> children;
    for (const auto& blk : blocks) {
      vals.push_back(sv(blk.b, blk.e, k, blk.sid));
      children.push_back(wit_s(blk.b, blk.e, k, blk.sid));
    }
    std::vector<double> coeffs;
    if (pk_one_[static_cast<std::size_t>(k)])
      coeffs.assign(vals.size(), 1.0);
    else
      coeffs = holder_coeffs(vals, pk_[static_cast<std::size_t>(k)]);
    return Functional::node(k, std::nullopt, std::move(coeffs), std::move(children));
  }

  const SpaceParams& params_;
  EngineOptions opts_;
  double theta_;
  bool top_inf_;
  double p_top_;
  double inv_conj_top_;
  int nk_;
  std::vector<double> pk_;
  std::vector<bool> pk_one_;

  std::vector<std::int64_t> pts_;
  std::vector<double> av_;
  std::vector<int> sg_;
  int n_ = 0;
  std::vector<std::int64_t> thresholds_;
  int sid_one_ = 0;

  std::unordered_map<std::uint64_t, double> u_val_;
  std::unordered_map<std::uint64_t, UChoice> u_choice_;
  std::unordered_map<std::uint64_t, double> s_val_;
  std::unordered_map<std::uint64_t, SChoice> s_choice_;
  std::unordered_map<std::uint64_t, ChainEntry> chain_;
  std::unordered_map<std::uint64_t, IntEntry> b_val_;
  std::unordered_map<std::uint64_t, IntEntry> h_val_;
  std::uint64_t nodes_ = 0;
};

double elapsed_ms(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0)
      .count();
}

}  // namespace

NormCertificate norm(const SparseVector& x, const SpaceParams& params,
                     const EngineOptions& opts) {
  const auto t0 = std::chrono::steady_clock::now();
  NormCertificate cert;
  if (x.empty()) {
    cert.stats.wall_ms = elapsed_ms(t0);
    return cert;
  }
  Solver solver(x, params, opts, {});
  const double value = solver.value_unconstrained();
  cert.witness = solver.witness_unconstrained();
  cert.lower = evaluate(cert.witness, x, params);
  cert.upper = std::max(value, cert.lower);
  cert.stats.memo_entries = solver.memo_entries();
  cert.stats.nodes_explored = solver.nodes_explored();
  cert.stats.wall_ms = elapsed_ms(t0);
  return cert;
}

double sized_best(const SparseVector& x, const Interval& window, int k,
                  std::int64_t min_size, const SpaceParams& params,
                  const EngineOptions& opts) {
  return sized_best_certificate(x, window, k, min_size, params, opts).value;
}

SizedCertificate sized_best_certificate(const SparseVector& x, const Interval& window,
                                        int k, std::int64_t min_size,
                                        const SpaceParams& params,
                                        const EngineOptions& opts) {
  if (k < 1 || k >= params.xi0())
    throw std::invalid_argument("sized_best: k must satisfy 1 <= k < xi0");
  if (min_size < 1) throw std::invalid_argument("sized_best: min_size must be >= 1");
  SizedCertificate cert;
  const SparseVector xr = x.restricted(window);
  if (xr.empty()) return cert;
  Solver solver(xr, params, opts, {min_size});
  cert.value = solver.value_sized(k, min_size);
  cert.witness = solver.witness_sized(k, min_size);
  return cert;
}

SizedCertificate best_fixed_size_average(const SparseVector& x, std::int64_t n,
                                         const SpaceParams& params,
                                         const EngineOptions& opts) {
  if (n < 1) throw std::invalid_argument("best_fixed_size_average: n must be >= 1");
  SizedCertificate cert;
  if (x.empty()) return cert;
  Solver solver(x, params, opts, {n});
  return solver.fixed_size_average(n);
}

}  // namespace bcl
