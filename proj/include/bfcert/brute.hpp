#pragma once

#include <cstdint>
#include <vector>

#include "bfcert/circuit.hpp"
#include "bfcert/sweep.hpp"

namespace bfcert {

// 3^n entries past this would dwarf the truth table; the brute oracles are
// test machinery, not production paths.
inline constexpr int kMaxBruteInputs = 14;

// Constancy of every subcube of {0,1}^n, indexed by trits: digit i of the
// index is 0 or 1 when coordinate i+1 is fixed to that bit and 2 when it is
// free. val is the constant value, or -1 when the subcube is not constant.
// Each subcube's two children (a free digit replaced by 0 and 1) have smaller
// indices, so one ascending pass fills the table.
struct SubcubeTable {
  int n = 0;
  std::vector<std::int8_t> val;
  std::vector<std::uint64_t> pow3;     // pow3[i] = 3^i
  std::vector<std::uint64_t> pow3sum;  // pow3sum[m] = sum of 3^i over bits i of m

  // Index of the subcube anchored at x with free coordinate mask F.
  std::uint64_t index(std::uint64_t x, std::uint32_t free_mask) const {
    return pow3sum[x & ~static_cast<std::uint64_t>(free_mask)] + 2 * pow3sum[free_mask];
  }
};

SubcubeTable build_subcube_table(const TruthTable& t);
SubcubeTable build_subcube_table(const Circuit& c);

// Smallest S with "fixing x on S pins f to f(x)", found by scanning subsets
// in ascending size (and ascending mask within a size), so the result is the
// minimum-size, lexicographically first certificate. Tests lean on both.
Certificate brute_cert(const SubcubeTable& tbl, const TruthTable& t, const Bits& x);
Certificate brute_cert(const Circuit& c, const Bits& x);

struct GlobalCert {
  int cert = 0;
  int cert0 = 0;  // max over f^{-1}(0); 0 when that preimage is empty
  int cert1 = 0;
};

GlobalCert brute_cert_global(const SubcubeTable& tbl, const TruthTable& t);
GlobalCert brute_cert_global(const Circuit& c);

// All inclusion-minimal certificate index masks at x (bit i-1 set for x_i).
std::vector<std::uint32_t> minimal_certificates_at(const SubcubeTable& tbl, const Bits& x);

// Deterministic query complexity by memoized recursion over subcubes:
// Depth(f) = 0 for constant f, else 1 + min_i max over both answers.
// Exponential in spirit and in fact; capped small.
int brute_depth(const Circuit& c);
inline constexpr int kMaxDepthInputs = 12;

}  // namespace bfcert
