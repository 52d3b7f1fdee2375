#pragma once

#include <string>
#include <vector>

#include "bfcert/brute.hpp"
#include "bfcert/circuit.hpp"

namespace bfcert {

// Blockwise parity: m = blocks * block_size input bits, grouped so block j
// (1-based) covers inputs (j-1)*block_size + 1 .. j*block_size; output bit j
// is that block's parity.
struct DisperserSpec {
  int blocks = 1;      // output width n
  int block_size = 1;  // bits per block
  int total_inputs() const { return blocks * block_size; }
};

// One circuit per output bit, each over all total_inputs() inputs.
std::vector<Circuit> blockwise_parity(const DisperserSpec& spec);

// Direct evaluation, for tests and the bit-fixing walk.
Bits blockwise_parity_eval(const DisperserSpec& spec, const Bits& z);

struct BitfixingResult {
  bool full_image = true;
  // Witness when !full_image: fixing fixed_indices to fixed_values makes
  // missing_output unreachable.
  std::vector<int> fixed_indices;
  Bits fixed_values;
  Bits missing_output;
};

// Does every way of fixing at most t input bits leave the map surjective
// onto {0,1}^blocks? Image shrinks as fixings grow, so only |S| = t needs
// enumeration. Exhaustive; capped at 16 total inputs.
BitfixingResult check_bitfixing(const DisperserSpec& spec, int t);

// phi composed with blockwise parity: n*ell inputs, and every certificate
// must fix at least ell coordinates per certificate-relevant output of phi.
Circuit gen_gappedcert(const Circuit& phi, int ell);

// Addressing function over log2(r) + r inputs: the first log2(r) bits select
// (LSB first) which of the following r data bits is the output.
Circuit gen_address(int r);

enum class PromiseTag { Yes, No, Unpromised };

// A co-nondeterministic acceptor: checker has 2n inputs (x then y, both n
// bits) and accepts x iff checker(x, y) = 1 for every y. The question the
// tag answers: does the checker accept some x with at most k ones?
struct MmwwInstance {
  std::string name;
  Circuit checker;
  int n = 0;
  int k = 0;
  PromiseTag tag = PromiseTag::Unpromised;
};

bool mmww_accepts(const MmwwInstance& inst, const Bits& x);

// Brute-checks the instance's promise: the accepted set must be upward
// closed (the reduction's certificate argument needs monotonicity), and the
// tag must match the minimum accepted weight vs k. Throws on any violation.
void verify_mmww_promise(const MmwwInstance& inst);

// Hand-built tiny instances with verified tags, used as test fixtures.
std::vector<MmwwInstance> mmww_fixtures();

struct MmwwReduction {
  Circuit f;    // over n + m inputs: x is 1..n, z is n+1..n+m
  Bits anchor;  // all-ones
  int n = 0;
  int m = 0;
  int ell = 0;
  int k = 0;
  PromiseTag tag = PromiseTag::Unpromised;
};

// f(x, z) = checker(x, BlockwisePar(z)) with m = n * ell. On a YES instance
// the support of a low-weight accepted x is a small certificate at the
// all-ones anchor; on a NO instance every certificate must pay for parity
// blocks.
MmwwReduction gen_mmww_reduction(const MmwwInstance& inst, int ell);

}  // namespace bfcert
