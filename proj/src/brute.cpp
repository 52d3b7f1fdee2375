#include "bfcert/brute.hpp"

#include <algorithm>
#include <bit>
#include <stdexcept>

namespace bfcert {

namespace {

// Digit i of trit index t, and the position of its lowest free digit (or -1).
int lowest_free_digit(const SubcubeTable& tbl, std::uint64_t t) {
  for (int i = 0; i < tbl.n; ++i) {
    if ((t / tbl.pow3[i]) % 3 == 2) return i;
  }
  return -1;
}

// Next-larger subset mask with the same popcount (Gosper).
std::uint32_t next_same_size(std::uint32_t v) {
  const std::uint32_t c = v & -v;
  const std::uint32_t r = v + c;
  return (((r ^ v) >> 2) / c) | r;
}

std::vector<int> mask_to_indices(std::uint32_t mask) {
  std::vector<int> out;
  for (int i = 0; mask; ++i, mask >>= 1) {
    if (mask & 1) out.push_back(i + 1);
  }
  return out;
}

// Smallest free-mask complement: scan |S| = 0, 1, ... and return the first S
// whose complementary subcube is constant.
std::uint32_t min_cert_mask(const SubcubeTable& tbl, std::uint64_t x) {
  const std::uint32_t full = tbl.n == 32 ? ~0u : ((1u << tbl.n) - 1);
  for (int size = 0; size <= tbl.n; ++size) {
    std::uint32_t s = size == 0 ? 0 : ((1u << size) - 1);
    while (true) {
      if (tbl.val[tbl.index(x, full & ~s)] >= 0) return s;
      if (size == 0) break;
      const std::uint32_t nxt = next_same_size(s);
      if (nxt > full) break;
      s = nxt;
    }
  }
  return full;  // unreachable: fixing everything is always a certificate
}

}  // namespace

SubcubeTable build_subcube_table(const TruthTable& t) {
  if (t.n > kMaxBruteInputs) throw std::invalid_argument("subcube table capped at 14 inputs");
  SubcubeTable tbl;
  tbl.n = t.n;
  tbl.pow3.resize(t.n + 1);
  tbl.pow3[0] = 1;
  for (int i = 1; i <= t.n; ++i) tbl.pow3[i] = 3 * tbl.pow3[i - 1];
  tbl.pow3sum.resize(1ULL << t.n, 0);
  for (std::uint64_t m = 1; m < (1ULL << t.n); ++m) {
    const std::uint64_t low = m & -m;
    int bit = 0;
    while (!((low >> bit) & 1)) ++bit;
    tbl.pow3sum[m] = tbl.pow3sum[m ^ low] + tbl.pow3[bit];
  }

  tbl.val.resize(tbl.pow3[t.n]);
  for (std::uint64_t idx = 0; idx < tbl.val.size(); ++idx) {
    const int p = lowest_free_digit(tbl, idx);
    if (p < 0) {
      // All digits fixed: idx encodes a single point.
      std::uint64_t x = 0, rest = idx;
      for (int i = 0; i < tbl.n; ++i, rest /= 3) x |= static_cast<std::uint64_t>(rest % 3) << i;
      tbl.val[idx] = t.get(x) ? 1 : 0;
    } else {
      const std::int8_t v0 = tbl.val[idx - 2 * tbl.pow3[p]];
      const std::int8_t v1 = tbl.val[idx - tbl.pow3[p]];
      tbl.val[idx] = (v0 == v1) ? v0 : std::int8_t{-1};
    }
  }
  return tbl;
}

SubcubeTable build_subcube_table(const Circuit& c) { return build_subcube_table(build_table(c)); }

Certificate brute_cert(const SubcubeTable& tbl, const TruthTable& t, const Bits& x) {
  if (static_cast<int>(x.size()) != tbl.n) throw std::invalid_argument("input length mismatch");
  const std::uint64_t xi = bits_to_index(x);
  Certificate cert;
  cert.indices = mask_to_indices(min_cert_mask(tbl, xi));
  cert.anchor = x;
  cert.claimed_value = t.get(xi);
  return cert;
}

Certificate brute_cert(const Circuit& c, const Bits& x) {
  const TruthTable t = build_table(c);
  return brute_cert(build_subcube_table(t), t, x);
}

GlobalCert brute_cert_global(const SubcubeTable& tbl, const TruthTable& t) {
  const std::uint64_t points = 1ULL << tbl.n;
  int c0 = 0, c1 = 0;
#pragma omp parallel for schedule(dynamic, 64) reduction(max : c0, c1)
  for (std::uint64_t x = 0; x < points; ++x) {
    const int size = static_cast<int>(std::popcount(min_cert_mask(tbl, x)));
    if (t.get(x)) {
      c1 = std::max(c1, size);
    } else {
      c0 = std::max(c0, size);
    }
  }
  return {std::max(c0, c1), c0, c1};
}

GlobalCert brute_cert_global(const Circuit& c) {
  const TruthTable t = build_table(c);
  return brute_cert_global(build_subcube_table(t), t);
}

std::vector<std::uint32_t> minimal_certificates_at(const SubcubeTable& tbl, const Bits& x) {
  if (static_cast<int>(x.size()) != tbl.n) throw std::invalid_argument("input length mismatch");
  const std::uint64_t xi = bits_to_index(x);
  const std::uint32_t full = (1u << tbl.n) - 1;
  auto is_cert = [&](std::uint32_t s) { return tbl.val[tbl.index(xi, full & ~s)] >= 0; };
  std::vector<std::uint32_t> out;
  for (std::uint32_t s = 0; s <= full; ++s) {
    if (!is_cert(s)) continue;
    bool minimal = true;
    for (std::uint32_t m = s; m && minimal; m &= m - 1) {
      if (is_cert(s ^ (m & -m))) minimal = false;
    }
    if (minimal) out.push_back(s);
  }
  return out;
}

int brute_depth(const Circuit& c) {
  if (c.num_inputs() > kMaxDepthInputs) throw std::invalid_argument("depth oracle capped at 12 inputs");
  const TruthTable t = build_table(c);
  const SubcubeTable tbl = build_subcube_table(t);
  std::vector<std::int8_t> memo(tbl.val.size(), -1);

  auto solve = [&](auto&& self, std::uint64_t idx) -> int {
    if (tbl.val[idx] >= 0) return 0;
    if (memo[idx] >= 0) return memo[idx];
    int best = tbl.n;
    for (int i = 0; i < tbl.n; ++i) {
      if ((idx / tbl.pow3[i]) % 3 != 2) continue;
      const int d0 = self(self, idx - 2 * tbl.pow3[i]);
      const int d1 = self(self, idx - tbl.pow3[i]);
      best = std::min(best, 1 + std::max(d0, d1));
    }
    memo[idx] = static_cast<std::int8_t>(best);
    return best;
  };
  return solve(solve, tbl.val.size() - 1);
}

}  // namespace bfcert
