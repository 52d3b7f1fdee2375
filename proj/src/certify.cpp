#include "bfcert/certify.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "bfcert/influence.hpp"

namespace bfcert {

namespace {

void check_config(const CertifyConfig& cfg) {
  if (!cfg.backend) throw std::invalid_argument("certify config needs a backend");
  if (!(cfg.delta > 0.0 && cfg.delta < 1.0)) throw std::invalid_argument("delta must lie in (0,1)");
  if (cfg.max_rounds && *cfg.max_rounds < 1) throw std::invalid_argument("max_rounds must be >= 1");
  if (cfg.eps_round && !(*cfg.eps_round > 0.0 && *cfg.eps_round < 1.0))
    throw std::invalid_argument("eps_round must lie in (0,1)");
}

}  // namespace

Restriction find_restriction(const CertifyConfig& cfg, const Circuit& c) {
  check_config(cfg);
  OracleBackend& b = *cfg.backend;
  const int n = c.num_inputs();
  const double eps = cfg.eps_round ? *cfg.eps_round : 1.0 / (4.0 * n);
  const int round_cap = cfg.max_rounds ? *cfg.max_rounds : 4 * n;
  const double delta_each = 1.0 / (4.0 * static_cast<double>(n) * n);

  Restriction pi;
  std::mt19937_64 bit_rng(cfg.seed);
  for (int round = 0; round < round_cap; ++round) {
    const Circuit restricted = restrict_circuit(c, pi);
    if (is_constant(b, restricted).constant) return pi;

    // Assigned coordinates are ignored by the restricted function, so their
    // balanced influence is exactly zero; only free ones are worth samples.
    const std::uint64_t round_seed = derive_seed(cfg.seed, 1000 + static_cast<std::uint64_t>(round));
    int best = 0;
    double best_est = 0.0;
    for (int i = 1; i <= n; ++i) {
      if (pi.assigns(i)) continue;
      SamplerConfig sub{derive_seed(round_seed, static_cast<std::uint64_t>(i))};
      const double est = estimate_balanced_influence(b, sub, restricted, i, eps, delta_each);
      if (est > best_est) {
        best_est = est;
        best = i;
      }
    }
    if (best == 0) continue;  // every estimate zero on a non-constant function: retry the round

    pi.set(best, uniform_below(bit_rng, 2) == 1);
  }
  if (is_constant(b, restrict_circuit(c, pi)).constant) return pi;
  throw RoundLimitExceeded("restriction search hit its round cap");
}

std::uint64_t amplification_repeats(double delta) {
  if (!(delta > 0.0 && delta < 1.0)) throw std::invalid_argument("delta must lie in (0,1)");
  const double raw = std::ceil(std::log2(1.0 / delta));
  return std::max<std::uint64_t>(1, static_cast<std::uint64_t>(raw));
}

Restriction find_restriction_amplified(const CertifyConfig& cfg, const Circuit& c) {
  check_config(cfg);
  const std::uint64_t repeats = amplification_repeats(cfg.delta);
  std::optional<Restriction> best;
  std::optional<RoundLimitExceeded> last_failure;
  for (std::uint64_t j = 0; j < repeats; ++j) {
    CertifyConfig sub = cfg;
    sub.seed = derive_seed(cfg.seed, j);
    try {
      Restriction pi = find_restriction(sub, c);
      if (!best || pi.size() < best->size()) best = std::move(pi);
    } catch (const RoundLimitExceeded& e) {
      last_failure = e;
    }
  }
  if (best) return *best;
  throw *last_failure;
}

CertifyResult find_certificate(const CertifyConfig& cfg, const Circuit& c, const Bits& x) {
  check_config(cfg);
  if (static_cast<int>(x.size()) != c.num_inputs())
    throw std::invalid_argument("input length mismatch");
  OracleBackend& b = *cfg.backend;
  const bool v = evaluate(c, x);

  std::set<int> support;
  CertifyResult result;
  // Each pass either certifies or grows the support, so n + 1 passes suffice;
  // anything past that means a restriction came back without fresh indices.
  for (int pass = 0; pass <= c.num_inputs() + 1; ++pass) {
    Restriction on_support;
    for (int i : support) on_support.set(i, x[i - 1]);
    const Circuit pinned = restrict_circuit(c, on_support);

    if (is_constant(b, pinned).constant) {
      result.certificate.indices.assign(support.begin(), support.end());
      result.certificate.anchor = x;
      result.certificate.claimed_value = v;
      return result;
    }

    ++result.iterations;
    CertifyConfig sub = cfg;
    sub.seed = derive_seed(cfg.seed, 7700 + static_cast<std::uint64_t>(result.iterations));
    const Restriction pi = find_restriction_amplified(sub, pinned);
    for (int i : pi.support()) support.insert(i);
  }
  throw std::logic_error("certificate loop failed to make progress");
}

}  // namespace bfcert
