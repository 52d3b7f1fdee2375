#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "bfcert/brute.hpp"
#include "bfcert/certify.hpp"
#include "bfcert/circuit_io.hpp"
#include "bfcert/greedy_tree.hpp"
#include "bfcert/hardness.hpp"
#include "bfcert/influence.hpp"
#include "bfcert/sampler.hpp"
#include "bfcert/solver.hpp"
#include "json.hpp"

namespace {

using namespace bfcert;

// Exit codes: 0 ok, 1 invalid/no-style answers, 2 usage or input errors,
// 3 unknown or backend failure.
constexpr int kOk = 0;
constexpr int kInvalid = 1;
constexpr int kUsage = 2;
constexpr int kUnknown = 3;

struct BackendOptions {
  std::string kind = "brute";
  std::string solver_cmd;
  std::string counter_cmd;
  int timeout_sec = 60;
};

void add_backend_flags(CLI::App* cmd, BackendOptions& opts) {
  cmd->add_option("--backend", opts.kind, "Oracle backend: brute or solver")
      ->check(CLI::IsMember({"brute", "solver"}));
  cmd->add_option("--solver-cmd", opts.solver_cmd,
                  "SAT solver command template; {cnf} is replaced by the DIMACS path");
  cmd->add_option("--counter-cmd", opts.counter_cmd, "Model counter command template");
  cmd->add_option("--timeout", opts.timeout_sec, "Subprocess timeout in seconds");
}

std::unique_ptr<OracleBackend> make_backend(const BackendOptions& opts) {
  if (opts.kind == "solver") {
    SolverConfig cfg;
    cfg.solve_cmd = opts.solver_cmd;
    cfg.count_cmd = opts.counter_cmd;
    if (cfg.solve_cmd.empty()) {
      if (const char* env = std::getenv("BFCERT_SOLVER_CMD")) cfg.solve_cmd = env;
    }
    if (cfg.count_cmd.empty()) {
      if (const char* env = std::getenv("BFCERT_COUNTER_CMD")) cfg.count_cmd = env;
    }
    cfg.timeout_sec = opts.timeout_sec;
    if (cfg.solve_cmd.empty())
      throw std::invalid_argument("solver backend needs --solver-cmd or BFCERT_SOLVER_CMD");
    return std::make_unique<ExternalSolverBackend>(cfg);
  }
  return std::make_unique<ExhaustiveBackend>(kMaxSweepInputs);
}

Circuit load_circuit(const std::string& path) { return read_circuit_file(path); }

Bits load_input(const std::string& bits, const Circuit& c) {
  const Bits x = parse_bits(bits);
  if (static_cast<int>(x.size()) != c.num_inputs())
    throw std::invalid_argument("input has " + std::to_string(x.size()) + " bits, circuit takes " +
                                std::to_string(c.num_inputs()));
  return x;
}

std::vector<int> parse_indices(const std::string& text) {
  std::string cleaned = text;
  for (char& ch : cleaned) {
    if (ch == ',') ch = ' ';
  }
  std::istringstream in(cleaned);
  std::vector<int> out;
  int v;
  while (in >> v) out.push_back(v);
  if (!in.eof()) throw std::invalid_argument("certificate indices must be integers");
  return out;
}

std::string est_str(double v) {
  std::ostringstream out;
  out << std::fixed << std::setprecision(6) << v;
  return out.str();
}

int run_certify(const std::string& circuit_path, const std::string& input_bits,
                const BackendOptions& bopts, std::uint64_t seed, double delta,
                std::optional<double> eps, std::optional<int> rounds) {
  const Circuit c = load_circuit(circuit_path);
  const Bits x = load_input(input_bits, c);
  auto backend = make_backend(bopts);

  CertifyConfig cfg;
  cfg.backend = backend.get();
  cfg.seed = seed;
  cfg.delta = delta;
  cfg.eps_round = eps;
  cfg.max_rounds = rounds;

  const CertifyResult result = find_certificate(cfg, c, x);
  const VerifyResult check = verify_certificate(*backend, c, result.certificate);

  std::cout << "value " << (result.certificate.claimed_value ? 1 : 0) << "\n";
  std::cout << "certificate";
  for (int i : result.certificate.indices) std::cout << " " << i;
  std::cout << "\n";
  std::cout << "size " << result.certificate.indices.size() << "\n";
  std::cout << "verified " << (check.valid ? "true" : "false") << "\n";
  return check.valid ? kOk : kInvalid;
}

int run_restrict(const std::string& circuit_path, const BackendOptions& bopts, std::uint64_t seed,
                 double delta, std::optional<double> eps, std::optional<int> rounds) {
  const Circuit c = load_circuit(circuit_path);
  auto backend = make_backend(bopts);

  CertifyConfig cfg;
  cfg.backend = backend.get();
  cfg.seed = seed;
  cfg.delta = delta;
  cfg.eps_round = eps;
  cfg.max_rounds = rounds;

  const Restriction pi = find_restriction_amplified(cfg, c);
  const Circuit fixed = restrict_circuit(c, pi);
  const bool value = evaluate(fixed, Bits(c.num_inputs(), 0));

  std::cout << "length " << pi.size() << "\n";
  for (const auto& [i, b] : pi.assignment) std::cout << "assign " << i << " " << (b ? 1 : 0) << "\n";
  std::cout << "value " << (value ? 1 : 0) << "\n";
  return kOk;
}

int run_verify(const std::string& circuit_path, const std::string& input_bits,
               const std::string& cert_text, const BackendOptions& bopts) {
  const Circuit c = load_circuit(circuit_path);
  const Bits x = load_input(input_bits, c);
  auto backend = make_backend(bopts);

  Certificate cert;
  cert.indices = parse_indices(cert_text);
  std::sort(cert.indices.begin(), cert.indices.end());
  cert.anchor = x;
  cert.claimed_value = evaluate(c, x);

  const VerifyResult result = verify_certificate(*backend, c, cert);
  if (result.valid) {
    std::cout << "valid\n";
    return kOk;
  }
  std::cout << "invalid y=" << bits_str(result.counterexample) << "\n";
  return kInvalid;
}

int run_stats(const std::string& circuit_path, const BackendOptions& bopts,
              const std::string& mode, std::uint64_t seed, double eps, double delta) {
  const Circuit c = load_circuit(circuit_path);
  auto backend = make_backend(bopts);
  const int n = c.num_inputs();

  if (mode == "estimated") {
    const InfluenceReport report = estimate_all_balanced(*backend, {seed}, c, eps, delta);
    for (int i = 1; i <= n; ++i) std::cout << i << " - " << est_str(report.est_values[i - 1]) << "\n";
    if (report.variance) std::cout << "Var " << rat_str(*report.variance) << "\n";
    std::cout << "TotalInf " << est_str(report.est_total) << "\n";
    std::cout << "MaxInf " << est_str(report.est_values[report.argmax - 1]) << "\n";
    return kOk;
  }

  const Rat var = exact_variance(*backend, c);
  const bool constant = var == Rat(0);
  std::vector<Rat> inf(n);
  for (int i = 1; i <= n; ++i) inf[i - 1] = exact_influence(*backend, c, i);
  for (int i = 1; i <= n; ++i) {
    std::cout << i << " " << rat_str(inf[i - 1]) << " ";
    if (constant) {
      std::cout << "-\n";
    } else {
      std::cout << rat_str(inf[i - 1] / (Rat(4) * var)) << "\n";
    }
  }
  std::cout << "Var " << rat_str(var) << "\n";
  Rat total(0);
  for (const Rat& v : inf) total += v;
  std::cout << "TotalInf " << rat_str(total) << "\n";
  Rat max_inf(0);
  for (const Rat& v : inf) max_inf = std::max(max_inf, v);
  std::cout << "MaxInf " << rat_str(max_inf) << "\n";
  if (bopts.kind == "brute" && n <= kMaxBruteInputs) {
    std::cout << "Cert " << brute_cert_global(c).cert << "\n";
  }
  return kOk;
}

int run_sample(const std::string& circuit_path, const BackendOptions& bopts,
               const std::string& mode, std::uint64_t seed, int num) {
  const Circuit c = load_circuit(circuit_path);
  auto backend = make_backend(bopts);
  UniformSampler sampler(*backend, c, seed);

  for (int t = 0; t < num; ++t) {
    const SampleOutcome out =
        mode == "balanced" ? sampler.sample_balanced() : sampler.sample_satisfying();
    if (out.unknown) {
      std::cout << "bot\n";
      std::cerr << "unknown: " << out.reason << "\n";
      return kUnknown;
    }
    if (!out.x) {
      std::cout << "bot\n";
      return kInvalid;
    }
    std::cout << bits_str(*out.x) << "\n";
  }
  return kOk;
}

int run_tree(const std::string& circuit_path, const BackendOptions& bopts, int depth,
             const std::string& mode, std::uint64_t seed, double eps, double delta) {
  const Circuit c = load_circuit(circuit_path);
  auto backend = make_backend(bopts);

  TreeConfig cfg;
  cfg.seed = seed;
  cfg.eps = eps;
  cfg.delta = delta;
  if (mode == "exact-influence") {
    cfg.mode = TreeMode::ExactInfluence;
  } else if (mode == "exact-balanced") {
    cfg.mode = TreeMode::ExactBalanced;
  } else {
    cfg.mode = TreeMode::Estimated;
  }

  const GreedyTree tree = build_greedy_tree(*backend, c, depth, cfg);
  std::cout << "depth " << tree.depth << "\n";
  for (int t = 0; t < tree.depth; ++t) {
    for (std::uint64_t p = 0; p < (1ULL << t); ++p) {
      std::cout << "node " << t << " " << p << " x" << tree.query[t][p] << "\n";
    }
  }
  for (std::uint64_t p = 0; p < (1ULL << tree.depth); ++p) {
    const int v = tree.node_value[tree.depth][p];
    if (v < 0) {
      std::cout << "leaf " << p << " open\n";
    } else {
      std::cout << "leaf " << p << " constant " << v << "\n";
    }
  }
  const std::vector<Rat> phi = potential_trace(*backend, c, tree);
  for (int t = 0; t <= tree.depth; ++t) {
    std::cout << "level " << t << " phi " << rat_str(phi[t]) << "\n";
  }
  return kOk;
}

const MmwwInstance& find_fixture(const std::vector<MmwwInstance>& all, const std::string& name) {
  for (const auto& inst : all) {
    if (inst.name == name) return inst;
  }
  std::string names;
  for (const auto& inst : all) names += (names.empty() ? "" : ", ") + inst.name;
  throw std::invalid_argument("unknown fixture '" + name + "' (have: " + names + ")");
}

int run_gen(const std::string& family, int n, int index, int r, int ell,
            const std::string& phi_path, const std::string& fixture, const std::string& out_path) {
  if (out_path.empty()) throw std::invalid_argument("gen needs --out");

  std::optional<Circuit> circuit;
  nlohmann::json meta;

  if (family == "and") {
    circuit = make_and(n);
  } else if (family == "xor") {
    circuit = make_xor(n);
  } else if (family == "dictator") {
    circuit = make_dictator(n, index);
  } else if (family == "address") {
    circuit = gen_address(r);
  } else if (family == "blockwise-compose") {
    if (phi_path.empty()) throw std::invalid_argument("blockwise-compose needs --phi");
    circuit = gen_gappedcert(load_circuit(phi_path), ell);
  } else if (family == "mmww") {
    const auto fixtures = mmww_fixtures();
    const MmwwInstance& inst = find_fixture(fixtures, fixture);
    verify_mmww_promise(inst);
    const MmwwReduction red = gen_mmww_reduction(inst, ell);
    circuit = red.f;
    meta["fixture"] = inst.name;
    meta["n"] = red.n;
    meta["m"] = red.m;
    meta["ell"] = red.ell;
    meta["k"] = red.k;
    meta["promise"] = red.tag == PromiseTag::Yes   ? "yes"
                      : red.tag == PromiseTag::No ? "no"
                                                  : "unpromised";
    meta["anchor"] = bits_str(red.anchor);
  } else {
    throw std::invalid_argument("unknown family '" + family + "'");
  }

  write_circuit_file(out_path, *circuit);
  std::cout << "wrote " << out_path << "\n";
  if (!meta.empty()) {
    const std::string meta_path = out_path + ".meta.json";
    std::ofstream out(meta_path);
    if (!out) throw std::runtime_error("cannot write " + meta_path);
    out << meta.dump(2) << "\n";
    std::cout << "meta " << meta_path << "\n";
  }
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Certificate search for boolean circuits with pluggable NP oracles"};
  app.require_subcommand(1);

  BackendOptions bopts;
  std::string circuit_path, input_bits, cert_text, mode, family, phi_path, fixture, out_path;
  std::uint64_t seed = kDefaultSeed;
  double delta = 0.25, eps = 0.05;
  std::optional<double> eps_round;
  std::optional<int> max_rounds;
  int num = 1, depth = 1, n = 2, index = 1, r = 2, ell = 2;

  auto* certify = app.add_subcommand("certify", "Find and verify a certificate for f at x");
  certify->add_option("--circuit", circuit_path)->required();
  certify->add_option("--input", input_bits)->required();
  certify->add_option("--seed", seed);
  certify->add_option("--delta", delta);
  certify->add_option("--eps", eps_round, "Per-round estimate accuracy (default 1/(4n))");
  certify->add_option("--rounds", max_rounds, "Restriction round cap (default 4n)");
  add_backend_flags(certify, bopts);

  auto* restrict_cmd = app.add_subcommand("restrict", "Find a constant-fixing restriction");
  restrict_cmd->add_option("--circuit", circuit_path)->required();
  restrict_cmd->add_option("--seed", seed);
  restrict_cmd->add_option("--delta", delta);
  restrict_cmd->add_option("--eps", eps_round);
  restrict_cmd->add_option("--rounds", max_rounds);
  add_backend_flags(restrict_cmd, bopts);

  auto* verify = app.add_subcommand("verify", "Check a claimed certificate");
  verify->add_option("--circuit", circuit_path)->required();
  verify->add_option("--input", input_bits)->required();
  verify->add_option("--cert", cert_text, "Certificate indices, space or comma separated")
      ->required();
  add_backend_flags(verify, bopts);

  auto* stats = app.add_subcommand("stats", "Influence and variance report");
  stats->add_option("--circuit", circuit_path)->required();
  stats->add_option("--mode", mode, "exact (default) or estimated")
      ->check(CLI::IsMember({"exact", "estimated"}));
  stats->add_option("--seed", seed);
  stats->add_option("--eps", eps);
  stats->add_option("--delta", delta);
  add_backend_flags(stats, bopts);

  auto* sample = app.add_subcommand("sample", "Draw from f^-1(1) or the balanced distribution");
  sample->add_option("--circuit", circuit_path)->required();
  sample->add_option("--mode", mode, "satisfying (default) or balanced")
      ->check(CLI::IsMember({"satisfying", "balanced"}));
  sample->add_option("--seed", seed);
  sample->add_option("--num", num, "How many samples to draw");
  add_backend_flags(sample, bopts);

  auto* tree = app.add_subcommand("tree", "Influence-maximizing tree and its potential trace");
  tree->add_option("--circuit", circuit_path)->required();
  tree->add_option("--depth", depth)->required();
  tree->add_option("--tree-mode", mode, "exact-influence (default), exact-balanced, estimated")
      ->check(CLI::IsMember({"exact-influence", "exact-balanced", "estimated"}));
  tree->add_option("--seed", seed);
  tree->add_option("--eps", eps);
  tree->add_option("--delta", delta);
  add_backend_flags(tree, bopts);

  auto* gen = app.add_subcommand("gen", "Emit test-family circuit files");
  gen->add_option("--family", family)
      ->required()
      ->check(CLI::IsMember({"and", "xor", "dictator", "address", "blockwise-compose", "mmww"}));
  gen->add_option("--n", n, "Input count (and, xor, dictator)");
  gen->add_option("--i", index, "Dictator coordinate");
  gen->add_option("--r", r, "Addressing data width (power of two)");
  gen->add_option("--ell", ell, "Parity block size");
  gen->add_option("--phi", phi_path, "Outer circuit file (blockwise-compose)");
  gen->add_option("--fixture", fixture, "Instance name (mmww)");
  gen->add_option("--out", out_path, "Output circuit path")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (certify->parsed())
      return run_certify(circuit_path, input_bits, bopts, seed, delta, eps_round, max_rounds);
    if (restrict_cmd->parsed())
      return run_restrict(circuit_path, bopts, seed, delta, eps_round, max_rounds);
    if (verify->parsed()) return run_verify(circuit_path, input_bits, cert_text, bopts);
    if (stats->parsed())
      return run_stats(circuit_path, bopts, mode.empty() ? "exact" : mode, seed, eps, delta);
    if (sample->parsed())
      return run_sample(circuit_path, bopts, mode.empty() ? "satisfying" : mode, seed, num);
    if (tree->parsed())
      return run_tree(circuit_path, bopts, depth, mode.empty() ? "exact-influence" : mode, seed,
                      eps, delta);
    if (gen->parsed()) return run_gen(family, n, index, r, ell, phi_path, fixture, out_path);
    std::cerr << "no subcommand\n";
    return kUsage;
  } catch (const OracleUnknown& e) {
    std::cerr << "unknown: " << e.what() << "\n";
    return kUnknown;
  } catch (const RoundLimitExceeded& e) {
    std::cerr << "unknown: " << e.what() << "\n";
    return kUnknown;
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const CircuitError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "failure: " << e.what() << "\n";
    return kUnknown;
  }
}
