// Copyright (c) 2026 the bcl authors
//
// This code is released under the
// Apache License Version 2.0 http://www.apache.org/licenses/.
//
// Command-line entry point. Exit codes: 0 ok, 1 input error, 2 budget/grid
// exhaustion, 3 no answer exists (krivine with p in F), 4 a sweep found a
// violated bound.

#include <atomic>
#include <cinttypes>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"

#include "bcl/json_io.hpp"
#include "bcl/oracle.hpp"
#include "bcl/rng.hpp"
#include "bcl/sequence_lab.hpp"

namespace {

constexpr const char* kVersion = "bcl-0.1.0";

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

bcl::Json load_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open '" + path + "'");
  return bcl::Json::parse(in);
}

void write_text(const std::string& out_path, const std::string& text) {
  if (out_path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(out_path, std::ios::binary);
  if (!out) throw std::invalid_argument("cannot open output '" + out_path + "'");
  out << text;
}

bcl::Json manifest(const std::string& command, const std::vector<std::string>& inputs,
                   std::uint64_t seed, double tol) {
  bcl::Json m;
  m["command"] = command;
  m["version"] = kVersion;
  m["inputs"] = inputs;
  m["seed"] = seed;
  m["tol"] = tol;
  return m;
}

std::string manifest_comment(const bcl::Json& m) {
  std::string line = "# manifest";
  for (const auto& [key, value] : m.items()) {
    line += " " + key + "=" +
            (value.is_string() ? value.get<std::string>() : value.dump());
  }
  return line + "\n";
}

int thread_count() {
  unsigned n = std::thread::hardware_concurrency();
  if (n == 0) n = 1;
  n = std::min(n, 8u);
  if (const char* env = std::getenv("BCL_THREADS")) {
    const long cap = std::strtol(env, nullptr, 10);
    if (cap >= 1) n = std::min<unsigned>(n, static_cast<unsigned>(cap));
  }
  return static_cast<int>(n);
}

struct TrialRow {
  int trial;
  int m;
  double lower, value, upper;
  bool pass;
};

int cmd_norm(const std::string& space_path, const std::string& vec_path, double tol,
             std::uint64_t budget, const std::string& out_path) {
  const bcl::SpaceParams params = bcl::space_from_json(load_json(space_path));
  const bcl::SparseVector x = bcl::vector_from_json(load_json(vec_path));
  bcl::EngineOptions opts;
  opts.tol = tol;
  opts.node_budget = budget;
  try {
    const bcl::NormCertificate cert = bcl::norm(x, params, opts);
    bcl::Json j;
    j["manifest"] = manifest("norm", {space_path, vec_path}, 0, tol);
    for (auto& [key, value] : bcl::certificate_to_json(cert).items()) j[key] = value;
    write_text(out_path, j.dump(2) + "\n");
    return 0;
  } catch (const bcl::BudgetExceededError& e) {
    std::cerr << "budget exceeded: " << e.what() << " (best lower " << fmt(e.best_lower)
              << " on [" << e.at.lo << "," << e.at.hi << "])\n";
    return 2;
  }
}

int cmd_oracle(const std::string& space_path, const std::string& vec_path, int depth,
               std::int64_t maxsize) {
  const bcl::SpaceParams params = bcl::space_from_json(load_json(space_path));
  const bcl::SparseVector x = bcl::vector_from_json(load_json(vec_path));
  const double value = bcl::brute_force_norm(x, params, depth, maxsize);
  std::cout << fmt(value) << "\n";
  return 0;
}

int cmd_estimates(const std::string& space_path, int trials, int max_m,
                  std::uint64_t seed, double tol, const std::string& out_path) {
  if (trials < 1) throw std::invalid_argument("estimates: trials must be >= 1");
  if (max_m < 1) throw std::invalid_argument("estimates: m must be >= 1");
  const bcl::SpaceParams params = bcl::space_from_json(load_json(space_path));

  std::vector<TrialRow> rows(static_cast<std::size_t>(trials));
  std::atomic<int> cursor{0};
  auto worker = [&]() {
    while (true) {
      const int t = cursor.fetch_add(1);
      if (t >= trials) return;
      bcl::Rng rng(seed * 0x9E3779B97F4A7C15ULL + static_cast<std::uint64_t>(t));
      const int m = static_cast<int>(rng.range(1, max_m));
      bcl::GapProfile profile;
      profile.kind = bcl::GapKind::kSpread;
      const bcl::BlockSequence seq =
          bcl::random_block_sequence(params, m, profile, rng.next());
      std::vector<double> lambdas;
      for (int j = 0; j < m; ++j) lambdas.push_back(2.0 * rng.unit() - 1.0);
      const bcl::EstimateReport rep =
          bcl::check_general_estimate(seq, lambdas, params, tol);
      rows[static_cast<std::size_t>(t)] =
          TrialRow{t, m, rep.lower_bound, rep.value, rep.upper_bound,
                   rep.lower_ok && rep.upper_ok && rep.witness_ok && rep.witness_valid};
    }
  };
  std::vector<std::thread> pool;
  const int nthreads = thread_count();
  for (int i = 0; i < nthreads; ++i) pool.emplace_back(worker);
  for (auto& th : pool) th.join();

  std::string csv = manifest_comment(manifest("estimates", {space_path}, seed, tol));
  csv += "trial,m,lower_bound,norm,upper_bound,pass\n";
  bool all_pass = true;
  for (const auto& r : rows) {
    csv += std::to_string(r.trial) + "," + std::to_string(r.m) + "," + fmt(r.lower) +
           "," + fmt(r.value) + "," + fmt(r.upper) + "," + (r.pass ? "1" : "0") + "\n";
    all_pass = all_pass && r.pass;
  }
  write_text(out_path, csv);
  return all_pass ? 0 : 4;
}

int cmd_spreading(const std::string& space_path, const std::string& mode,
                  std::vector<int> Ks, std::uint64_t seed, const std::string& out_path) {
  if (Ks.size() < 2) throw std::invalid_argument("spreading: need >= 2 K values");
  for (std::size_t i = 0; i + 1 < Ks.size(); ++i)
    if (Ks[i] >= Ks[i + 1])
      throw std::invalid_argument("spreading: Ks must be ascending");
  const bcl::SpaceParams params = bcl::space_from_json(load_json(space_path));

  bcl::GrowthFit fit;
  if (mode == "basis") {
    fit.Ks = Ks;
    for (int K : Ks) {
      bcl::SparseVector z;
      for (int j = 1; j <= K; ++j) z = add(z, bcl::SparseVector::unit(2 * K + j));
      fit.norms.push_back(bcl::norm(z, params).lower);
    }
    std::vector<double> xs, ys;
    for (std::size_t i = 0; i < fit.norms.size(); ++i) {
      xs.push_back(std::log(static_cast<double>(fit.Ks[i])));
      ys.push_back(std::log(fit.norms[i]));
    }
    fit.exponent_hat = bcl::fit_loglog_slope(xs, ys, &fit.residual);
  } else if (mode == "average-cascade") {
    const int pieces = 2 * Ks.back() - 1;
    const bcl::BlockSequence seq = bcl::average_cascade(params, pieces, 16, seed);
    fit = bcl::estimate_growth_exponent(seq, Ks, params);
  } else {
    throw std::invalid_argument("spreading: mode must be basis or average-cascade");
  }

  std::string csv = manifest_comment(manifest("spreading", {space_path}, seed, 1e-9));
  csv += "K,norm,exponent_hat,residual\n";
  for (std::size_t i = 0; i < fit.norms.size(); ++i) {
    csv += std::to_string(fit.Ks[i]) + "," + fmt(fit.norms[i]) + "," +
           fmt(fit.exponent_hat) + "," + fmt(fit.residual) + "\n";
  }
  write_text(out_path, csv);
  return 0;
}

int cmd_krivine(const std::string& space_path, const std::string& p_text,
                const std::string& out_path) {
  const bcl::SpaceParams params = bcl::space_from_json(load_json(space_path));
  const bcl::ExtExponent p = bcl::ExtExponent::parse(p_text);
  bcl::Json j;
  j["manifest"] = manifest("krivine", {space_path}, 0, 1e-12);
  std::string table;
  try {
    const bcl::GapResult gap = bcl::locate_gap(p, params);
    if (gap.kind == bcl::GapResult::kOutside) {
      const bcl::EnvelopeConstants env = bcl::envelope_constants(p, params);
      j["kind"] = "envelope";
      bcl::Json e;
      e["p"] = env.p.str();
      e["side"] = env.above ? "above_p_xi0" : "below_p_1";
      e["eps"] = env.eps;
      e["K"] = env.K;
      j["envelope"] = e;
      table = "p outside [p_1, p_xi0]; envelope rules out (1+eps)-equivalence at K=" +
              std::to_string(env.K) + ", eps=" + fmt(env.eps) + "\n";
    } else {
      const bcl::KrivineConstants c = bcl::compute_constants(p, params);
      const auto checks = bcl::verify_constants(c, params);
      j["kind"] = "constants";
      j["constants"] = bcl::krivine_to_json(c);
      j["checks"] = bcl::ineq_checks_to_json(checks);
      std::ostringstream os;
      os << "p=" << p.str() << "  k=" << c.k << "  N=" << c.N << "  eps=" << fmt(c.eps)
         << "  Theta=" << fmt(c.Theta) << "  M=" << c.M << "  K=" << c.K << "\n";
      for (const auto& chk : checks) {
        os << (chk.pass ? "  [ok]   " : "  [FAIL] ") << chk.name
           << "  lhs=" << fmt(chk.lhs) << "  rhs=" << fmt(chk.rhs) << "\n";
      }
      table = os.str();
    }
  } catch (const bcl::PInFamilyError&) {
    std::cerr << "p belongs to F: the space finitely block represents l_p; no "
                 "counterexample constants exist\n";
    return 3;
  } catch (const bcl::GridExhaustedError& e) {
    std::cerr << "grid exhausted: " << e.what() << "\n";
    return 2;
  }
  if (out_path.empty()) {
    std::cout << j.dump(2) << "\n";
  } else {
    write_text(out_path, j.dump(2) + "\n");
    std::cout << table;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Norm evaluator and experiment harness for layered block spaces"};
  app.set_version_flag("--version", kVersion);
  app.require_subcommand(1);

  std::string space_path, vec_path, out_path, mode = "basis", p_text;
  double tol = 1e-9;
  std::uint64_t seed = 0, budget = 10'000'000;
  int trials = 1, max_m = 8, depth = 4;
  std::int64_t maxsize = 16;
  std::vector<int> Ks = {2, 4, 8};

  auto* norm_cmd = app.add_subcommand("norm", "norm certificate for a vector");
  norm_cmd->add_option("space", space_path)->required();
  norm_cmd->add_option("vector", vec_path)->required();
  norm_cmd->add_option("--tol", tol);
  norm_cmd->add_option("--budget", budget);
  norm_cmd->add_option("--out", out_path);

  auto* oracle_cmd = app.add_subcommand("oracle", "brute-force norm on tiny supports");
  oracle_cmd->add_option("space", space_path)->required();
  oracle_cmd->add_option("vector", vec_path)->required();
  oracle_cmd->add_option("--depth", depth);
  oracle_cmd->add_option("--maxsize", maxsize);

  auto* est_cmd = app.add_subcommand("estimates", "block-sequence envelope sweep");
  est_cmd->add_option("space", space_path)->required();
  est_cmd->add_option("--trials", trials);
  est_cmd->add_option("--m", max_m);
  est_cmd->add_option("--seed", seed);
  est_cmd->add_option("--tol", tol);
  est_cmd->add_option("--out", out_path);

  auto* spr_cmd = app.add_subcommand("spreading", "partial-sum growth experiment");
  spr_cmd->add_option("space", space_path)->required();
  spr_cmd->add_option("--mode", mode)->check(CLI::IsMember({"basis", "average-cascade"}));
  spr_cmd->add_option("--Ks", Ks)->delimiter(',');
  spr_cmd->add_option("--seed", seed);
  spr_cmd->add_option("--out", out_path);

  auto* kri_cmd = app.add_subcommand("krivine", "counterexample constants for p not in F");
  kri_cmd->add_option("space", space_path)->required();
  kri_cmd->add_option("--p", p_text)->required();
  kri_cmd->add_option("--out", out_path);

  CLI11_PARSE(app, argc, argv);

  try {
    if (norm_cmd->parsed()) return cmd_norm(space_path, vec_path, tol, budget, out_path);
    if (oracle_cmd->parsed()) return cmd_oracle(space_path, vec_path, depth, maxsize);
    if (est_cmd->parsed())
      return cmd_estimates(space_path, trials, max_m, seed, tol, out_path);
    if (spr_cmd->parsed()) return cmd_spreading(space_path, mode, Ks, seed, out_path);
    if (kri_cmd->parsed()) return cmd_krivine(space_path, p_text, out_path);
  } catch (const bcl::Json::parse_error& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return 1;
  } catch (const std::invalid_argument& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
