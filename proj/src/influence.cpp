#include "bfcert/influence.hpp"

#include <cmath>

#include "bfcert/rng.hpp"
#include "bfcert/sweep.hpp"

namespace bfcert {

Rat exact_influence(OracleBackend& b, const Circuit& c, int i) {
  if (i < 1 || i > c.num_inputs()) throw std::invalid_argument("coordinate index out of range");
  const int n = c.num_inputs();
  if (auto table = b.full_table(c)) {
    return Rat(BigInt(sensitive_count(*table, i)), pow2(n));
  }
  // g(x) = f(x) xor f(x ^ e_i) is 1 exactly on the sensitive points.
  return Rat(BigInt(b.count_models(sensitivity_gadget(c, i), true)), pow2(n));
}

Rat exact_variance(OracleBackend& b, const Circuit& c) {
  const int n = c.num_inputs();
  std::uint64_t ones;
  if (auto table = b.full_table(c)) {
    ones = count_value(*table, true);
  } else {
    ones = b.count_models(c, true);
  }
  const BigInt c1 = ones;
  const BigInt c0 = pow2(n) - c1;
  return Rat(c1 * c0, pow2(2 * n));
}

Rat exact_total_influence(OracleBackend& b, const Circuit& c) {
  Rat total(0);
  for (int i = 1; i <= c.num_inputs(); ++i) total += exact_influence(b, c, i);
  return total;
}

Rat exact_balanced_influence(OracleBackend& b, const Circuit& c, int i) {
  const Rat var = exact_variance(b, c);
  if (var == Rat(0)) throw ConstantFunctionError("balanced influence of a constant function");
  return exact_influence(b, c, i) / (Rat(4) * var);
}

int exact_sensitivity(const Circuit& c, const Bits& x) {
  const bool fx = evaluate(c, x);
  int count = 0;
  for (int i = 1; i <= c.num_inputs(); ++i) {
    if (evaluate(c, flip_bit(x, i)) != fx) ++count;
  }
  return count;
}

std::uint64_t hoeffding_samples(double eps, double delta) {
  if (!(eps > 0.0 && eps < 1.0)) throw std::invalid_argument("eps must lie in (0,1)");
  if (!(delta > 0.0 && delta < 1.0)) throw std::invalid_argument("delta must lie in (0,1)");
  return static_cast<std::uint64_t>(std::ceil(std::log(2.0 / delta) / (2.0 * eps * eps)));
}

double estimate_balanced_influence(OracleBackend& b, const SamplerConfig& cfg, const Circuit& c,
                                   int i, double eps, double delta) {
  if (i < 1 || i > c.num_inputs()) throw std::invalid_argument("coordinate index out of range");
  const std::uint64_t rounds = hoeffding_samples(eps, delta);
  UniformSampler sampler(b, c, cfg.seed);
  auto table = b.full_table(c);
  std::uint64_t sensitive = 0;
  for (std::uint64_t t = 0; t < rounds; ++t) {
    const SampleOutcome out = sampler.sample_balanced();
    if (out.unknown) throw OracleUnknown(out.reason);
    if (!out.x) throw ConstantFunctionError("balanced sampler found a constant function");
    const Bits flipped = flip_bit(*out.x, i);
    const bool fy = table ? table->get(bits_to_index(flipped)) : evaluate(c, flipped);
    if (fy != *out.value) ++sensitive;
  }
  return static_cast<double>(sensitive) / static_cast<double>(rounds);
}

InfluenceReport estimate_all_balanced(OracleBackend& b, const SamplerConfig& cfg, const Circuit& c,
                                      double eps, double delta) {
  const int n = c.num_inputs();
  InfluenceReport report;
  report.mode = InfluenceMode::EstimatedBalanced;
  report.eps = eps;
  report.delta_each = delta / n;
  report.seed = cfg.seed;
  report.est_values.resize(n);
  for (int i = 1; i <= n; ++i) {
    SamplerConfig sub{derive_seed(cfg.seed, static_cast<std::uint64_t>(i))};
    report.est_values[i - 1] = estimate_balanced_influence(b, sub, c, i, eps, report.delta_each);
  }
  report.argmax = 1;
  for (int i = 2; i <= n; ++i) {
    if (report.est_values[i - 1] > report.est_values[report.argmax - 1]) report.argmax = i;
  }
  for (double v : report.est_values) report.est_total += v;
  try {
    report.variance = exact_variance(b, c);
  } catch (const OracleUnknown&) {
    report.variance = std::nullopt;
  }
  return report;
}

InfluenceReport exact_report(OracleBackend& b, const Circuit& c, InfluenceMode mode) {
  if (mode == InfluenceMode::EstimatedBalanced)
    throw std::invalid_argument("exact_report handles the exact modes only");
  const int n = c.num_inputs();
  InfluenceReport report;
  report.mode = mode;
  report.variance = exact_variance(b, c);
  report.exact_values.resize(n);
  for (int i = 1; i <= n; ++i) {
    report.exact_values[i - 1] = mode == InfluenceMode::ExactBalanced
                                     ? exact_balanced_influence(b, c, i)
                                     : exact_influence(b, c, i);
  }
  report.argmax = 1;
  for (int i = 2; i <= n; ++i) {
    if (report.exact_values[i - 1] > report.exact_values[report.argmax - 1]) report.argmax = i;
  }
  report.exact_total = Rat(0);
  for (const Rat& v : report.exact_values) report.exact_total += v;
  return report;
}

}  // namespace bfcert
