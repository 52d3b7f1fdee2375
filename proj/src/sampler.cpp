#include "bfcert/sampler.hpp"

#include <bit>
#include <stdexcept>

namespace bfcert {

namespace {

constexpr int kTreeInputs = 16;  // past this the folded counting tree is bigger than the table

constexpr std::uint64_t kBitPattern[6] = {
    0xAAAAAAAAAAAAAAAAULL, 0xCCCCCCCCCCCCCCCCULL, 0xF0F0F0F0F0F0F0F0ULL,
    0xFF00FF00FF00FF00ULL, 0xFFFF0000FFFF0000ULL, 0xFFFFFFFF00000000ULL,
};

// Count of value-bits whose low `fixed` index bits equal `prefix`.
std::uint64_t low_fixed_count(const TruthTable& t, std::uint64_t prefix, int fixed, bool value) {
  const std::uint64_t full = t.n >= 6 ? ~0ULL : ((1ULL << (1u << t.n)) - 1);
  std::uint64_t mask = full;
  for (int k = 0; k < fixed && k < 6; ++k)
    mask &= ((prefix >> k) & 1) ? kBitPattern[k] : ~kBitPattern[k];
  std::uint64_t cnt = 0;
  const std::uint64_t step = fixed > 6 ? (1ULL << (fixed - 6)) : 1;
  const std::uint64_t start = fixed > 6 ? (prefix >> 6) : 0;
  for (std::uint64_t w = start; w < t.words.size(); w += step) {
    const std::uint64_t bits = value ? t.words[w] : (~t.words[w] & full);
    cnt += std::popcount(bits & mask);
  }
  return cnt;
}

}  // namespace

UniformSampler::UniformSampler(OracleBackend& backend, const Circuit& c, std::uint64_t seed)
    : backend_(backend), circuit_(c), rng_(seed), table_(backend.full_table(c)) {}

std::uint64_t UniformSampler::prefix_count(std::uint64_t prefix, int fixed, bool value) {
  if (table_) {
    if (circuit_.num_inputs() <= kTreeInputs) {
      const auto& levels = tree_[value ? 1 : 0];
      if (fixed == circuit_.num_inputs()) return table_->get(prefix) == value ? 1 : 0;
      return levels[fixed][prefix];
    }
    return low_fixed_count(*table_, prefix, fixed, value);
  }
  Restriction rho;
  for (int k = 0; k < fixed; ++k) rho.set(k + 1, (prefix >> k) & 1);
  return backend_.count_models_restricted(circuit_, rho, value);
}

std::optional<std::uint64_t> UniformSampler::total_count(bool value, std::string* why) {
  const int n = circuit_.num_inputs();
  if (n > 62) {
    if (why) *why = "sampler caps at 62 inputs";
    return std::nullopt;
  }
  if (table_) {
    if (n <= kTreeInputs && !tree_ready_[value ? 1 : 0]) {
      auto& levels = tree_[value ? 1 : 0];
      levels.resize(n);
      for (int k = n - 1; k >= 0; --k) {
        levels[k].resize(1ULL << k);
        for (std::uint64_t y = 0; y < (1ULL << k); ++y) {
          const std::uint64_t lo = y, hi = y | (1ULL << k);
          auto leaf = [&](std::uint64_t x) -> std::uint64_t {
            return table_->get(x) == value ? 1 : 0;
          };
          levels[k][y] = (k + 1 == n) ? leaf(lo) + leaf(hi) : levels[k + 1][lo] + levels[k + 1][hi];
        }
      }
      tree_ready_[value ? 1 : 0] = true;
    }
    if (n <= kTreeInputs) return tree_[value ? 1 : 0][0][0];
    return low_fixed_count(*table_, 0, 0, value);
  }
  try {
    return backend_.count_models(circuit_, value);
  } catch (const OracleUnknown& e) {
    if (why) *why = e.what();
    return std::nullopt;
  }
}

SampleOutcome UniformSampler::sample_value(bool value) {
  SampleOutcome out;
  std::string why;
  auto total = total_count(value, &why);
  if (!total) {
    out.unknown = true;
    out.reason = why;
    return out;
  }
  if (*total == 0) return out;

  const int n = circuit_.num_inputs();
  std::uint64_t prefix = 0;
  std::uint64_t remaining = *total;
  for (int k = 0; k < n; ++k) {
    const std::uint64_t c0 = prefix_count(prefix, k + 1, value);
    const std::uint64_t u = uniform_below(rng_, remaining);
    if (u < c0) {
      remaining = c0;
    } else {
      prefix |= 1ULL << k;
      remaining -= c0;
    }
    if (remaining == 0) throw std::logic_error("sampler count bookkeeping went negative");
  }
  out.x = index_to_bits(prefix, n);
  out.value = value;
  return out;
}

SampleOutcome UniformSampler::sample_satisfying() { return sample_value(true); }

SampleOutcome UniformSampler::sample_balanced() {
  SampleOutcome probe;
  std::string why;
  auto ones = total_count(true, &why);
  if (!ones) {
    probe.unknown = true;
    probe.reason = why;
    return probe;
  }
  const std::uint64_t space = 1ULL << circuit_.num_inputs();
  if (*ones == 0 || *ones == space) return probe;  // constant: no balanced sample
  const bool b = uniform_below(rng_, 2) == 1;
  return sample_value(b);
}

SampleOutcome sample_satisfying(OracleBackend& b, const Circuit& c, const SamplerConfig& cfg) {
  return UniformSampler(b, c, cfg.seed).sample_satisfying();
}

SampleOutcome sample_balanced(OracleBackend& b, const Circuit& c, const SamplerConfig& cfg) {
  return UniformSampler(b, c, cfg.seed).sample_balanced();
}

}  // namespace bfcert
