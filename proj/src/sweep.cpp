#include "bfcert/sweep.hpp"

#include <algorithm>
#include <bit>

namespace bfcert {

namespace {

// Value of index bit k across the 64 inputs of one word, k < 6.
constexpr std::uint64_t kBitPattern[6] = {
    0xAAAAAAAAAAAAAAAAULL, 0xCCCCCCCCCCCCCCCCULL, 0xF0F0F0F0F0F0F0F0ULL,
    0xFF00FF00FF00FF00ULL, 0xFFFF0000FFFF0000ULL, 0xFFFFFFFF00000000ULL,
};

std::uint64_t tail_mask(int n) {
  return n >= 6 ? ~0ULL : ((1ULL << (1u << n)) - 1);
}

void check_sweepable(const Circuit& c) {
  if (c.num_inputs() > kMaxSweepInputs)
    throw CircuitError("exhaustive sweep over " + std::to_string(c.num_inputs()) +
                       " inputs exceeds the " + std::to_string(kMaxSweepInputs) + "-input limit");
}

// All 64 outputs of the circuit for inputs {block*64, ..., block*64+63}.
std::uint64_t eval_block(const Circuit& c, std::uint64_t block, std::vector<std::uint64_t>& val) {
  auto read = [&](Ref r) -> std::uint64_t {
    if (r.is_input()) {
      const int k = r.input_index() - 1;  // index bit position
      if (k < 6) return kBitPattern[k];
      return ((block >> (k - 6)) & 1) ? ~0ULL : 0ULL;
    }
    return val[r.gate_index()];
  };
  for (std::size_t g = 0; g < c.gates().size(); ++g) {
    const Gate& gate = c.gates()[g];
    std::uint64_t v = 0;
    switch (gate.op) {
      case Op::Const0: v = 0; break;
      case Op::Const1: v = ~0ULL; break;
      case Op::Not: v = ~read(gate.args[0]); break;
      case Op::And:
        v = ~0ULL;
        for (Ref a : gate.args) v &= read(a);
        break;
      case Op::Or:
        v = 0;
        for (Ref a : gate.args) v |= read(a);
        break;
      case Op::Xor:
        v = 0;
        for (Ref a : gate.args) v ^= read(a);
        break;
    }
    val[g] = v;
  }
  return read(c.output());
}

// Word filter induced by a restriction: a word survives iff its index bits
// match (hi_sel, hi_val); inside a surviving word only bits under low_mask
// are consistent with the assignment.
struct WordFilter {
  std::uint64_t low_mask;
  std::uint64_t hi_sel = 0;
  std::uint64_t hi_val = 0;
};

WordFilter make_filter(const TruthTable& t, const Restriction& rho) {
  WordFilter f;
  f.low_mask = tail_mask(t.n);
  for (const auto& [i, b] : rho.assignment) {
    const int k = i - 1;
    if (k < 0 || k >= t.n)
      throw CircuitError("restriction assigns x" + std::to_string(i) + " outside 1.." +
                         std::to_string(t.n));
    if (k < 6)
      f.low_mask &= b ? kBitPattern[k] : ~kBitPattern[k];
    else {
      f.hi_sel |= 1ULL << (k - 6);
      if (b) f.hi_val |= 1ULL << (k - 6);
    }
  }
  return f;
}

}  // namespace

TruthTable build_table(const Circuit& c) {
  check_sweepable(c);
  TruthTable t;
  t.n = c.num_inputs();
  const std::int64_t nwords = t.n >= 6 ? (1LL << (t.n - 6)) : 1;
  t.words.assign(nwords, 0);
  const std::uint64_t mask = tail_mask(t.n);

#pragma omp parallel
  {
    std::vector<std::uint64_t> scratch(c.gates().size());
#pragma omp for schedule(static)
    for (std::int64_t w = 0; w < nwords; ++w)
      t.words[w] = eval_block(c, static_cast<std::uint64_t>(w), scratch) & mask;
  }
  return t;
}

TruthTable build_table_serial(const Circuit& c) {
  check_sweepable(c);
  TruthTable t;
  t.n = c.num_inputs();
  const std::int64_t nwords = t.n >= 6 ? (1LL << (t.n - 6)) : 1;
  t.words.assign(nwords, 0);
  for (std::uint64_t x = 0; x < t.size(); ++x)
    if (evaluate(c, index_to_bits(x, t.n))) t.words[x >> 6] |= 1ULL << (x & 63);
  return t;
}

std::uint64_t count_value(const TruthTable& t, bool value) {
  const std::int64_t nwords = static_cast<std::int64_t>(t.words.size());
  std::uint64_t ones = 0;
#pragma omp parallel for schedule(static) reduction(+ : ones)
  for (std::int64_t w = 0; w < nwords; ++w) ones += std::popcount(t.words[w]);
  return value ? ones : t.size() - ones;
}

std::uint64_t count_value_serial(const Circuit& c, bool value) {
  check_sweepable(c);
  std::uint64_t cnt = 0;
  const std::uint64_t lim = 1ULL << c.num_inputs();
  for (std::uint64_t x = 0; x < lim; ++x)
    if (evaluate(c, index_to_bits(x, c.num_inputs())) == value) ++cnt;
  return cnt;
}

std::uint64_t count_value_restricted(const TruthTable& t, const Restriction& rho, bool value) {
  const WordFilter f = make_filter(t, rho);
  const std::uint64_t full = tail_mask(t.n);
  std::uint64_t cnt = 0;
  for (std::uint64_t w = 0; w < t.words.size(); ++w) {
    if ((w & f.hi_sel) != f.hi_val) continue;
    const std::uint64_t bits = value ? t.words[w] : (~t.words[w] & full);
    cnt += std::popcount(bits & f.low_mask);
  }
  return cnt;
}

std::optional<std::uint64_t> first_value_restricted(const TruthTable& t, const Restriction& rho,
                                                    bool value) {
  const WordFilter f = make_filter(t, rho);
  const std::uint64_t full = tail_mask(t.n);
  for (std::uint64_t w = 0; w < t.words.size(); ++w) {
    if ((w & f.hi_sel) != f.hi_val) continue;
    const std::uint64_t bits = (value ? t.words[w] : (~t.words[w] & full)) & f.low_mask;
    if (bits) return (w << 6) + std::countr_zero(bits);
  }
  return std::nullopt;
}

std::uint64_t sensitive_count(const TruthTable& t, int i) {
  const int k = i - 1;
  if (k < 0 || k >= t.n) throw CircuitError("sensitivity coordinate x" + std::to_string(i) + " out of range");
  const std::int64_t nwords = static_cast<std::int64_t>(t.words.size());
  std::uint64_t cnt = 0;
  if (k < 6) {
    const std::uint64_t hi = kBitPattern[k];
    const int d = 1 << k;
#pragma omp parallel for schedule(static) reduction(+ : cnt)
    for (std::int64_t w = 0; w < nwords; ++w) {
      const std::uint64_t v = t.words[w];
      const std::uint64_t swapped = ((v & ~hi) << d) | ((v & hi) >> d);
      cnt += std::popcount(v ^ swapped);
    }
  } else {
    const std::uint64_t d = 1ULL << (k - 6);
#pragma omp parallel for schedule(static) reduction(+ : cnt)
    for (std::int64_t w = 0; w < nwords; ++w)
      cnt += std::popcount(t.words[w] ^ t.words[w ^ d]);
  }
  // Bits past 2^n are zero on both sides for n < 6, so they never count.
  return cnt;
}

std::uint64_t sensitive_count_serial(const Circuit& c, int i) {
  check_sweepable(c);
  std::uint64_t cnt = 0;
  const std::uint64_t lim = 1ULL << c.num_inputs();
  for (std::uint64_t x = 0; x < lim; ++x) {
    const Bits b = index_to_bits(x, c.num_inputs());
    if (evaluate(c, b) != evaluate(c, flip_bit(b, i))) ++cnt;
  }
  return cnt;
}

std::vector<std::uint64_t> value_prefix(const TruthTable& t, bool value) {
  const std::uint64_t full = tail_mask(t.n);
  std::vector<std::uint64_t> prefix(t.words.size());
  std::uint64_t acc = 0;
  for (std::size_t w = 0; w < t.words.size(); ++w) {
    acc += std::popcount(value ? t.words[w] : (~t.words[w] & full));
    prefix[w] = acc;
  }
  return prefix;
}

std::uint64_t select_value(const TruthTable& t, const std::vector<std::uint64_t>& prefix,
                           bool value, std::uint64_t j) {
  const std::uint64_t full = tail_mask(t.n);
  const auto it = std::upper_bound(prefix.begin(), prefix.end(), j);
  const std::size_t w = static_cast<std::size_t>(it - prefix.begin());
  std::uint64_t rank = j - (w == 0 ? 0 : prefix[w - 1]);
  std::uint64_t bits = value ? t.words[w] : (~t.words[w] & full);
  while (rank--) bits &= bits - 1;  // clear lowest set bits
  return (static_cast<std::uint64_t>(w) << 6) + std::countr_zero(bits);
}

}  // namespace bfcert
