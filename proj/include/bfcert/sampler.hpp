#pragma once

#include <optional>
#include <random>

#include "bfcert/oracle.hpp"
#include "bfcert/rng.hpp"

namespace bfcert {

struct SamplerConfig {
  std::uint64_t seed = kDefaultSeed;
};

struct SampleOutcome {
  std::optional<Bits> x;             // empty means "no sample exists" for the request
  std::optional<bool> value;         // f(x) when x is present
  bool unknown = false;              // the backend could not answer
  std::string reason;                // why, when unknown
};

// Exact uniform generation by self-reducible counting: walk x1..xn in
// ascending order, fixing each bit with probability proportional to the model
// count of the corresponding sub-restriction. All counts are exact, and the
// per-step draws are exactly uniform, so the output distribution is exactly
// uniform over the target set whenever the backend can count.
// Holds its own copy of the circuit, so a temporary is a fine argument.
class UniformSampler {
 public:
  UniformSampler(OracleBackend& backend, const Circuit& c, std::uint64_t seed = kDefaultSeed);

  // Uniform over f^{-1}(1); no sample iff f is unsatisfiable.
  SampleOutcome sample_satisfying();

  // A fair bit b, then uniform over f^{-1}(b); no sample iff f is constant.
  SampleOutcome sample_balanced();

  std::mt19937_64& rng() { return rng_; }

 private:
  std::uint64_t prefix_count(std::uint64_t prefix, int fixed, bool value);
  std::optional<std::uint64_t> total_count(bool value, std::string* why);
  SampleOutcome sample_value(bool value);

  OracleBackend& backend_;
  const Circuit circuit_;
  std::mt19937_64 rng_;

  // With an enumerating backend the per-step counts come from a folded
  // counting tree over the truth table: tree_[v][k][y] counts the models of
  // f^{-1}(v) whose low k index bits equal y. One build serves every sample.
  std::shared_ptr<const TruthTable> table_;
  std::vector<std::vector<std::uint64_t>> tree_[2];
  bool tree_ready_[2] = {false, false};
};

SampleOutcome sample_satisfying(OracleBackend& b, const Circuit& c, const SamplerConfig& cfg);
SampleOutcome sample_balanced(OracleBackend& b, const Circuit& c, const SamplerConfig& cfg);

}  // namespace bfcert
