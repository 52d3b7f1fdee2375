#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>

#include "bfcert/circuit.hpp"
#include "bfcert/oracle.hpp"
#include "bfcert/rng.hpp"

namespace bfcert {

// The restriction search retries a round when every estimate comes back zero
// on a non-constant function (the estimator was unlucky); this surfaces when
// the retry budget runs out. Callers treat it as retryable, not fatal.
class RoundLimitExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct CertifyConfig {
  OracleBackend* backend = nullptr;
  std::uint64_t seed = kDefaultSeed;
  double delta = 0.25;  // global failure budget; amplification repeats ceil(log2(1/delta)) times
  std::optional<double> eps_round;  // per-round estimate accuracy; default 1/(4n)
  std::optional<int> max_rounds;    // retry cap for the restriction loop; default 4n
};

// One pass of the restriction search: while f restricted by pi is not
// constant, estimate every free coordinate's balanced influence to within
// eps_round (each with failure probability 1/(4n^2)), fix the argmax
// coordinate to a uniform random bit, and repeat. The returned restriction
// always yields a constant function; rounds whose estimates are all zero are
// retried against the max_rounds budget.
Restriction find_restriction(const CertifyConfig& cfg, const Circuit& c);

std::uint64_t amplification_repeats(double delta);

// Runs find_restriction ceil(log2(1/delta)) times on derived seeds and keeps
// the shortest restriction found. Throws only if every repeat fails.
Restriction find_restriction_amplified(const CertifyConfig& cfg, const Circuit& c);

struct CertifyResult {
  Certificate certificate;
  int iterations = 0;  // support-growing rounds; 0 when x* certifies immediately
};

// Grows an index set S from empty: each iteration asks the oracle whether
// fixing x* on S already pins f (two satisfiability queries, on the
// restricted circuit and on its negation) and, if not, unions in the support
// of a fresh constant-fixing restriction of the restricted circuit.
CertifyResult find_certificate(const CertifyConfig& cfg, const Circuit& c, const Bits& x);

}  // namespace bfcert
