// End-to-end acceptance gate. Each criterion prints exactly one PASS/FAIL
// line; the process exits nonzero if any criterion fails. Tolerances and
// corpus sizes are pinned here, not configurable.

#include <sys/wait.h>
#include <unistd.h>

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "bfcert/brute.hpp"
#include "bfcert/certify.hpp"
#include "bfcert/circuit.hpp"
#include "bfcert/circuit_io.hpp"
#include "bfcert/greedy_tree.hpp"
#include "bfcert/hardness.hpp"
#include "bfcert/influence.hpp"
#include "bfcert/oracle.hpp"
#include "bfcert/sampler.hpp"
#include "support/corpus.hpp"

using namespace bfcert;
using test::naive_balanced_influence;
using test::naive_is_cert;
using test::random_circuit;
using test::random_nonconstant_circuit;

namespace {

// Corpus shapes.
constexpr int kSweepCircuits = 1000;
constexpr int kSweepMinInputs = 4;
constexpr int kSweepMaxInputs = 12;
constexpr int kSweepMaxGates = 40;
constexpr std::uint64_t kSweepSeed = 0x5eedc0de;

constexpr int kIdentityCircuits = 500;
constexpr int kIdentityMinInputs = 2;
constexpr int kIdentityMaxInputs = 10;
constexpr int kIdentityMaxGates = 30;
constexpr std::uint64_t kIdentitySeed = 0xba1a9ced;

// Statistical tolerances.
constexpr int kChiSquareSamples = 12000;
constexpr double kChiSquareCritical = 11.3449;  // alpha = 0.01, 3 degrees of freedom
constexpr int kCalibrationRuns = 200;
constexpr int kCalibrationMinHits = 195;
constexpr double kCalibrationEps = 0.05;
constexpr double kCalibrationDelta = 0.01;

// Composition sweep bound: every (outer arity, block size) product up to this.
constexpr int kMaxProductInputs = 12;

constexpr int kCliRuns = 20;

struct Verdict {
  bool ok = true;
  std::string detail;
};

struct SweepRecord {
  Circuit c;
  Bits x;
  CertifyResult result;
  GlobalCert global;
  bool failed = false;
  std::string why;
};

ExhaustiveBackend& backend() {
  static ExhaustiveBackend b(kMaxSweepInputs);
  return b;
}

std::vector<SweepRecord>& sweep_corpus() {
  static std::vector<SweepRecord> corpus = [] {
    std::vector<SweepRecord> out;
    out.reserve(kSweepCircuits);
    std::mt19937_64 rng(kSweepSeed);
    for (int t = 0; t < kSweepCircuits; ++t) {
      const int n =
          kSweepMinInputs + static_cast<int>(rng() % (kSweepMaxInputs - kSweepMinInputs + 1));
      SweepRecord rec{random_circuit(rng, n, kSweepMaxGates),
                      index_to_bits(rng() & ((1ULL << n) - 1), n),
                      {},
                      {},
                      false,
                      {}};
      CertifyConfig cfg;
      cfg.backend = &backend();
      cfg.seed = 0x100000 + static_cast<std::uint64_t>(t);
      try {
        rec.result = find_certificate(cfg, rec.c, rec.x);
      } catch (const std::exception& e) {
        rec.failed = true;
        rec.why = e.what();
      }
      rec.global = brute_cert_global(rec.c);
      out.push_back(std::move(rec));
    }
    return out;
  }();
  return corpus;
}

std::vector<Circuit>& identity_corpus() {
  static std::vector<Circuit> corpus = [] {
    std::vector<Circuit> out;
    out.reserve(kIdentityCircuits);
    std::mt19937_64 rng(kIdentitySeed);
    for (int t = 0; t < kIdentityCircuits; ++t) {
      const int n = kIdentityMinInputs +
                    static_cast<int>(rng() % (kIdentityMaxInputs - kIdentityMinInputs + 1));
      out.push_back(random_nonconstant_circuit(rng, n, kIdentityMaxGates));
    }
    return out;
  }();
  return corpus;
}

Verdict criterion_soundness() {
  int bad = 0;
  std::string first;
  for (const SweepRecord& rec : sweep_corpus()) {
    if (rec.failed) {
      ++bad;
      if (first.empty()) first = "search threw: " + rec.why;
      continue;
    }
    const Certificate& cert = rec.result.certificate;
    const bool anchored = cert.anchor == rec.x && cert.claimed_value == evaluate(rec.c, rec.x);
    const bool oracle_ok = verify_certificate(backend(), rec.c, cert).valid;
    const bool naive_ok = naive_is_cert(rec.c, rec.x, cert.indices);
    if (!(anchored && oracle_ok && naive_ok)) {
      ++bad;
      if (first.empty())
        first = "certificate rejected (anchored=" + std::to_string(anchored) +
                " oracle=" + std::to_string(oracle_ok) + " naive=" + std::to_string(naive_ok) + ")";
    }
  }
  if (bad > 0)
    return {false, std::to_string(bad) + " of " + std::to_string(kSweepCircuits) +
                       " sweeps failed; first: " + first};
  return {true, std::to_string(kSweepCircuits) + "/" + std::to_string(kSweepCircuits) +
                    " certificates passed both the oracle and the exhaustive check"};
}

Verdict criterion_iteration_bound() {
  int bad = 0;
  int worst_iters = 0, worst_bound = 0;
  for (const SweepRecord& rec : sweep_corpus()) {
    if (rec.failed) {
      ++bad;
      continue;
    }
    const int bound = rec.global.cert0 + rec.global.cert1;
    if (rec.result.iterations > bound) {
      ++bad;
      worst_iters = rec.result.iterations;
      worst_bound = bound;
    }
  }
  if (bad > 0)
    return {false, std::to_string(bad) + " sweeps exceeded the bound (e.g. " +
                       std::to_string(worst_iters) + " rounds vs cert0+cert1 = " +
                       std::to_string(worst_bound) + ")"};
  return {true, "loop rounds <= cert0 + cert1 on all " + std::to_string(kSweepCircuits) +
                    " sweeps"};
}

Verdict criterion_balanced_identity() {
  long checked = 0;
  for (const Circuit& c : identity_corpus()) {
    const Rat var = exact_variance(backend(), c);
    for (int i = 1; i <= c.num_inputs(); ++i) {
      const Rat by_definition = naive_balanced_influence(c, i);
      const Rat by_identity = exact_influence(backend(), c, i) / (Rat(4) * var);
      if (by_definition != by_identity)
        return {false, "mismatch at coordinate " + std::to_string(i) + ": definition " +
                           rat_str(by_definition) + " vs influence/(4 var) " +
                           rat_str(by_identity)};
      ++checked;
    }
  }
  return {true, std::to_string(checked) + " coordinate identities hold exactly over " +
                    std::to_string(kIdentityCircuits) + " circuits"};
}

Verdict criterion_inequalities() {
  long circuits = 0;
  auto check_one = [&](const Circuit& c, const GlobalCert& global) -> std::string {
    const int n = c.num_inputs();
    const Rat var = exact_variance(backend(), c);
    std::vector<Rat> inf(n);
    Rat total(0);
    for (int i = 1; i <= n; ++i) {
      inf[i - 1] = exact_influence(backend(), c, i);
      total += inf[i - 1];
    }
    const Rat k(global.cert);

    if (!(Rat(4) * var <= total)) return "4 var <= total influence";
    if (!(total <= Rat(4) * var * k)) return "total influence <= 4 var cert";
    if (!(total <= k)) return "total influence <= cert";
    if (var > Rat(0)) {
      const Rat floor = rat_over_pow2(1, global.cert) - rat_over_pow2(1, 2 * global.cert);
      if (var < floor) return "variance granularity floor";
      Rat best(0);
      for (const Rat& v : inf) best = std::max(best, v / (Rat(4) * var));
      if (best < Rat(1, n)) return "max balanced influence >= 1/n";
    }
    for (int i = 1; i <= n; ++i) {
      Restriction lo, hi;
      lo.set(i, false);
      hi.set(i, true);
      const Rat lhs = total - inf[i - 1];
      const Rat rhs = (exact_total_influence(backend(), restrict_circuit(c, lo)) +
                       exact_total_influence(backend(), restrict_circuit(c, hi))) /
                      Rat(2);
      if (lhs != rhs) return "restriction halving identity at x" + std::to_string(i);
    }
    return {};
  };

  for (const SweepRecord& rec : sweep_corpus()) {
    const std::string broke = check_one(rec.c, rec.global);
    if (!broke.empty()) return {false, "sweep corpus violation: " + broke};
    ++circuits;
  }
  for (const Circuit& c : identity_corpus()) {
    const std::string broke = check_one(c, brute_cert_global(c));
    if (!broke.empty()) return {false, "identity corpus violation: " + broke};
    ++circuits;
  }
  return {true, "all five exact laws hold on " + std::to_string(circuits) + " circuits"};
}

Verdict criterion_potential_law() {
  long trees = 0;
  for (const Circuit& c : identity_corpus()) {
    const int n = c.num_inputs();
    TreeConfig cfg;
    cfg.mode = TreeMode::ExactInfluence;
    const GreedyTree tree = build_greedy_tree(backend(), c, n, cfg);
    const std::vector<Rat> phi = potential_trace(backend(), c, tree);

    const int k = brute_cert_global(c).cert;
    const Rat decay = Rat(1) - Rat(1, static_cast<long>(k) * k * k);
    for (int t = 1; t <= tree.depth; ++t) {
      Rat queried(0);
      for (std::uint64_t p = 0; p < (1ULL << (t - 1)); ++p) {
        const Circuit sub = restrict_circuit(c, node_restriction(tree, t - 1, p));
        queried += exact_influence(backend(), sub, tree.query[t - 1][p]);
      }
      const Rat drop = queried / Rat(pow2(t - 1));
      if (phi[t] != phi[t - 1] - drop)
        return {false, "level " + std::to_string(t) + " potential is not the previous level minus the queried influence"};
      if (phi[t] > phi[t - 1] * decay)
        return {false, "level " + std::to_string(t) + " potential decayed slower than 1 - 1/cert^3"};
    }
    ++trees;
  }
  return {true, "exact recurrence and decay hold for " + std::to_string(trees) +
                    " full-depth trees"};
}

Verdict criterion_sampler_exactness() {
  long points = 0;
  for (std::size_t ci = 0; ci < identity_corpus().size(); ++ci) {
    const Circuit& c = identity_corpus()[ci];
    const int n = c.num_inputs();
    const auto table = backend().full_table(c);
    if (!table) return {false, "backend failed to enumerate a corpus circuit"};
    const std::uint64_t ones = count_value(*table, true);

    UniformSampler sampler(backend(), c, 0x600d5eed + ci);
    const SampleOutcome out = sampler.sample_satisfying();
    if (out.unknown) return {false, "sampler reported unknown on an in-cap circuit"};
    if (out.x.has_value() != (ones > 0))
      return {false, "sampler emptiness disagrees with the model count"};
    if (out.x && !evaluate(c, *out.x)) return {false, "sampler returned a non-model"};

    // Unrolled branch masses: walking x1..xn and multiplying exact count
    // ratios must give every model probability exactly 1/|f^-1(1)|.
    for (std::uint64_t v = 0; v < (1ULL << n); ++v) {
      if (!table->get(v)) continue;
      const Bits x = index_to_bits(v, n);
      Rat prob(1);
      Restriction rho;
      for (int i = 1; i <= n; ++i) {
        const std::uint64_t before = backend().count_models_restricted(c, rho, true);
        rho.set(i, x[i - 1] != 0);
        const std::uint64_t after = backend().count_models_restricted(c, rho, true);
        if (before == 0 || after == 0) return {false, "a model's branch mass hit zero"};
        prob *= Rat(BigInt(after), BigInt(before));
      }
      if (prob != Rat(1, BigInt(ones)))
        return {false, "branch mass " + rat_str(prob) + " differs from 1/" +
                           std::to_string(ones)};
      ++points;
    }
  }

  // Balanced draws on the two-input conjunction: masses 1/2, 1/6, 1/6, 1/6.
  const Circuit both = make_and(2);
  UniformSampler sampler(backend(), both, 0xc41b);
  std::array<long, 4> freq{0, 0, 0, 0};
  for (int t = 0; t < kChiSquareSamples; ++t) {
    const SampleOutcome out = sampler.sample_balanced();
    if (!out.x) return {false, "balanced draw failed on a non-constant circuit"};
    ++freq[bits_to_index(*out.x)];
  }
  const double expected_one = kChiSquareSamples / 2.0;
  const double expected_zero = kChiSquareSamples / 6.0;
  double chi = 0.0;
  for (int v = 0; v < 4; ++v) {
    const double expected = v == 3 ? expected_one : expected_zero;
    const double d = freq[v] - expected;
    chi += d * d / expected;
  }
  if (chi >= kChiSquareCritical) {
    std::ostringstream s;
    s << "chi-square " << chi << " exceeds the critical value " << kChiSquareCritical;
    return {false, s.str()};
  }
  std::ostringstream s;
  s << points << " model probabilities exactly uniform; balanced chi-square " << chi << " < "
    << kChiSquareCritical;
  return {true, s.str()};
}

Verdict criterion_calibration() {
  const Circuit both = make_and(2);
  const double target = 2.0 / 3.0;
  int hits = 0;
  for (int t = 0; t < kCalibrationRuns; ++t) {
    const double est =
        estimate_balanced_influence(backend(), {0x7000 + static_cast<std::uint64_t>(t)}, both, 1,
                                    kCalibrationEps, kCalibrationDelta);
    if (std::abs(est - target) <= kCalibrationEps) ++hits;
  }
  if (hits < kCalibrationMinHits)
    return {false, std::to_string(hits) + " of " + std::to_string(kCalibrationRuns) +
                       " estimates landed within 0.05 of 2/3 (need " +
                       std::to_string(kCalibrationMinHits) + ")"};
  return {true, std::to_string(hits) + "/" + std::to_string(kCalibrationRuns) +
                    " estimates within 0.05 of 2/3"};
}

// Smallest certificate size at every point, via the shared subcube table.
std::vector<int> cert_sizes_everywhere(const Circuit& c) {
  const TruthTable t = build_table(c);
  const SubcubeTable tbl = build_subcube_table(t);
  std::vector<int> out(t.size());
  for (std::uint64_t v = 0; v < t.size(); ++v)
    out[v] = static_cast<int>(brute_cert(tbl, t, index_to_bits(v, c.num_inputs())).indices.size());
  return out;
}

Verdict criterion_reductions() {
  // (a) Composing with parity blocks multiplies pointwise certificate cost.
  std::mt19937_64 rng(0xfeedface);
  long composed = 0;
  for (int n = 1; n <= kMaxProductInputs; ++n) {
    std::vector<Circuit> outers;
    if (n == 1) {
      outers.push_back(make_identity());
    } else if (n <= 6) {
      outers.push_back(make_xor(n));
      outers.push_back(make_and(n));
      outers.push_back(make_or(n));
      outers.push_back(make_dictator(n, 1));
      outers.push_back(random_nonconstant_circuit(rng, n, 12));
    } else {
      continue;
    }
    for (int ell = 1; n * ell <= kMaxProductInputs; ++ell) {
      for (const Circuit& phi : outers) {
        const Circuit f = gen_gappedcert(phi, ell);
        const std::vector<int> cert_f = cert_sizes_everywhere(f);
        const std::vector<int> cert_phi = cert_sizes_everywhere(phi);
        const DisperserSpec spec{n, ell};
        const int m = spec.total_inputs();
        for (std::uint64_t zi = 0; zi < (1ULL << m); ++zi) {
          const Bits z = index_to_bits(zi, m);
          const Bits y = blockwise_parity_eval(spec, z);
          if (cert_f[zi] < cert_phi[bits_to_index(y)] * ell)
            return {false, "composition cheapened a certificate (outer arity " +
                               std::to_string(n) + ", block " + std::to_string(ell) + ")"};
        }
        ++composed;
      }
    }
  }

  // (b) Fixing up to block_size - 1 bits never kills surjectivity; fixing a
  // whole block's worth can.
  long fixings = 0;
  for (int blocks = 1; blocks <= kMaxProductInputs; ++blocks) {
    for (int ell = 1; blocks * ell <= kMaxProductInputs; ++ell) {
      const DisperserSpec spec{blocks, ell};
      if (!check_bitfixing(spec, ell - 1).full_image)
        return {false, "surjectivity lost below the threshold (" + std::to_string(blocks) + "x" +
                           std::to_string(ell) + ")"};
      if (check_bitfixing(spec, ell).full_image)
        return {false, "surjectivity survived at the threshold (" + std::to_string(blocks) + "x" +
                           std::to_string(ell) + ")"};
      ++fixings;
    }
  }

  // (c) Every YES-tagged acceptor instance keeps its promised small
  // certificate at the all-ones anchor after the reduction.
  long promises = 0;
  for (const MmwwInstance& inst : mmww_fixtures()) {
    verify_mmww_promise(inst);
    if (inst.tag != PromiseTag::Yes) continue;
    for (int ell = 1; ell <= 3; ++ell) {
      const MmwwReduction red = gen_mmww_reduction(inst, ell);
      const int cert = static_cast<int>(brute_cert(red.f, red.anchor).indices.size());
      if (cert > red.k)
        return {false, inst.name + " with block " + std::to_string(ell) +
                           ": anchor certificate " + std::to_string(cert) + " exceeds k = " +
                           std::to_string(red.k)};
      ++promises;
    }
  }

  return {true, std::to_string(composed) + " compositions, " + std::to_string(fixings) +
                    " fixing thresholds, " + std::to_string(promises) +
                    " promise bounds all hold"};
}

Verdict criterion_address_gap() {
  const Circuit c = gen_address(4);  // 2 selector bits, 4 data bits
  const GlobalCert global = brute_cert_global(c);
  if (global.cert != 3)
    return {false, "certificate complexity is " + std::to_string(global.cert) + ", expected 3"};

  Certificate data_block;
  data_block.indices = {3, 4, 5, 6};
  data_block.anchor = Bits(6, 1);
  data_block.claimed_value = evaluate(c, data_block.anchor);
  if (!verify_certificate(backend(), c, data_block).valid)
    return {false, "the full data block is not a certificate at the all-ones point"};
  if (!naive_is_cert(c, data_block.anchor, data_block.indices))
    return {false, "exhaustive check rejected the data-block certificate"};

  for (std::uint32_t sub = 0; sub < 15; ++sub) {  // every proper subset of the 4 indices
    Certificate smaller;
    for (int b = 0; b < 4; ++b)
      if (sub & (1u << b)) smaller.indices.push_back(data_block.indices[b]);
    smaller.anchor = data_block.anchor;
    smaller.claimed_value = data_block.claimed_value;
    if (verify_certificate(backend(), c, smaller).valid)
      return {false, "a proper subset of the data block still certifies"};
  }
  return {true, "complexity 3 with a verified minimal certificate of size 4"};
}

struct CliRun {
  int code = -1;
  std::string out;
};

CliRun run_cli(const std::string& bin, const std::string& args) {
  const std::string cmd = "'" + bin + "' " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  CliRun r;
  if (!pipe) return r;
  char buf[4096];
  std::size_t got;
  while ((got = fread(buf, 1, sizeof buf, pipe)) > 0) r.out.append(buf, got);
  const int status = pclose(pipe);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

Verdict criterion_cli_determinism() {
  const char* bin = std::getenv("BFCERT_BIN");
  if (!bin) return {false, "BFCERT_BIN is not set"};

  const std::filesystem::path dir =
      std::filesystem::temp_directory_path() / ("bfcert-accept-" + std::to_string(getpid()));
  std::filesystem::create_directories(dir);
  const std::string circuit = (dir / "parity5.ckt").string();
  write_circuit_file(circuit, make_xor(5));

  const std::vector<std::string> invocations = {
      "certify --circuit '" + circuit + "' --input 10101 --seed 424242",
      "sample --circuit '" + circuit + "' --mode balanced --num 6 --seed 99",
  };
  for (const std::string& args : invocations) {
    const CliRun first = run_cli(bin, args);
    if (first.code != 0) return {false, "run exited " + std::to_string(first.code) + ": " + args};
    for (int t = 1; t < kCliRuns; ++t) {
      const CliRun again = run_cli(bin, args);
      if (again.code != first.code || again.out != first.out)
        return {false, "run " + std::to_string(t + 1) + " diverged: " + args};
    }
  }
  return {true, std::to_string(kCliRuns) + " repeats of each invocation were byte-identical"};
}

}  // namespace

int main() {
  struct Entry {
    const char* name;
    Verdict (*fn)();
  };
  const Entry entries[] = {
      {"criterion-1 soundness-sweep", criterion_soundness},
      {"criterion-2 iteration-bound", criterion_iteration_bound},
      {"criterion-3 balanced-influence-identity", criterion_balanced_identity},
      {"criterion-4 influence-inequalities", criterion_inequalities},
      {"criterion-5 potential-law", criterion_potential_law},
      {"criterion-6 sampler-exactness", criterion_sampler_exactness},
      {"criterion-7 estimator-calibration", criterion_calibration},
      {"criterion-8 reduction-correctness", criterion_reductions},
      {"criterion-9 addressing-gap", criterion_address_gap},
      {"criterion-10 cli-determinism", criterion_cli_determinism},
  };

  int failures = 0;
  for (const Entry& e : entries) {
    Verdict v;
    try {
      v = e.fn();
    } catch (const std::exception& ex) {
      v = {false, std::string("threw: ") + ex.what()};
    }
    std::cout << (v.ok ? "PASS " : "FAIL ") << e.name << ": " << v.detail << std::endl;
    if (!v.ok) ++failures;
  }
  return failures == 0 ? 0 : 1;
}
