#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

#include "bfcert/circuit.hpp"
#include "bfcert/oracle.hpp"
#include "bfcert/rational.hpp"
#include "bfcert/sampler.hpp"

namespace bfcert {

// Balanced influence divides by Var(f), so constant functions have no
// sensible value and asking for one is a caller bug worth a loud error.
class ConstantFunctionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Inf_i(f) = Pr_x[f(x) != f(x ^ e_i)], exact. Uses the backend's full truth
// table when one is available, otherwise counts models of the xor-of-copies
// gadget that is 1 exactly on the i-sensitive points.
Rat exact_influence(OracleBackend& b, const Circuit& c, int i);

// Var(f) = c1 * c0 / 2^(2n) for the 0/1-valued function.
Rat exact_variance(OracleBackend& b, const Circuit& c);

Rat exact_total_influence(OracleBackend& b, const Circuit& c);

// BalInf_i(f) = Inf_i(f) / (4 Var(f)). Throws ConstantFunctionError when
// Var = 0. Equals the flip probability under the balanced distribution: draw
// b uniform, then x uniform from f^{-1}(b), and test f(x ^ e_i) != f(x).
Rat exact_balanced_influence(OracleBackend& b, const Circuit& c, int i);

// Number of coordinates i with f(x ^ e_i) != f(x). No oracle needed.
int exact_sensitivity(const Circuit& c, const Bits& x);

// Sample count for a Hoeffding two-sided tail: ceil(ln(2/delta) / (2 eps^2)).
std::uint64_t hoeffding_samples(double eps, double delta);

// Monte Carlo estimate of BalInf_i: hoeffding_samples(eps, delta) draws from
// the balanced sampler, returning the fraction that are i-sensitive. Within
// eps of the true value with probability at least 1 - delta. Throws
// ConstantFunctionError if the sampler reports a constant function and
// OracleUnknown if the backend cannot answer; neither is retried here, so the
// stated failure probability covers exactly the advertised randomness.
double estimate_balanced_influence(OracleBackend& b, const SamplerConfig& cfg, const Circuit& c,
                                   int i, double eps, double delta);

enum class InfluenceMode { ExactInfluence, ExactBalanced, EstimatedBalanced };

struct InfluenceReport {
  InfluenceMode mode = InfluenceMode::ExactInfluence;
  std::vector<Rat> exact_values;    // filled in the exact modes, length n
  std::vector<double> est_values;   // filled in EstimatedBalanced, length n
  std::optional<Rat> variance;      // absent only when the backend cannot count
  Rat exact_total;
  double est_total = 0.0;
  int argmax = 0;  // 1-based; lowest index among ties
  double eps = 0.0;
  double delta_each = 0.0;
  std::uint64_t seed = 0;
};

// One estimate per coordinate, each with failure budget delta / n and its own
// derived seed, so a union bound gives the whole report failure <= delta.
InfluenceReport estimate_all_balanced(OracleBackend& b, const SamplerConfig& cfg, const Circuit& c,
                                      double eps, double delta);

// Exact per-coordinate report in either exact mode.
InfluenceReport exact_report(OracleBackend& b, const Circuit& c, InfluenceMode mode);

}  // namespace bfcert
