#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "bfcert/circuit.hpp"

namespace bfcert {

// Bit-packed truth table over all 2^n inputs. Bit x of words[x >> 6] is the
// function value at packed index x (x1 is bit 0 of the index). For n < 6 only
// the low 2^n bits of the single word are meaningful; the rest stay zero.
struct TruthTable {
  int n = 0;
  std::vector<std::uint64_t> words;

  std::uint64_t size() const { return 1ULL << n; }
  bool get(std::uint64_t x) const { return (words[x >> 6] >> (x & 63)) & 1; }
};

// 2^26 bits is 8 MiB per table; past that exhaustive sweeps stop being a
// sensible tool and the solver backend should take over.
inline constexpr int kMaxSweepInputs = 26;

// Word-parallel evaluation of every gate over 64 inputs at a time,
// parallelized across word blocks. The workhorse behind the exhaustive
// oracle, influence counting, and the brute-force searches.
TruthTable build_table(const Circuit& c);

// Reference implementation: one evaluate() call per input point. Kept (and
// exercised by tests and the benchmark) as the ground truth the kernels are
// compared against.
TruthTable build_table_serial(const Circuit& c);

std::uint64_t count_value(const TruthTable& t, bool value);
std::uint64_t count_value_serial(const Circuit& c, bool value);

// Count and search restricted to {x : x agrees with rho}.
std::uint64_t count_value_restricted(const TruthTable& t, const Restriction& rho, bool value);
std::optional<std::uint64_t> first_value_restricted(const TruthTable& t, const Restriction& rho,
                                                    bool value);
inline std::optional<std::uint64_t> first_value(const TruthTable& t, bool value) {
  return first_value_restricted(t, Restriction{}, value);
}

// |{x : f(x) != f(x ^ e_i)}|, i.e. 2^n times the influence of coordinate i.
std::uint64_t sensitive_count(const TruthTable& t, int i);
std::uint64_t sensitive_count_serial(const Circuit& c, int i);

// Packed index of the j-th (0-based, ascending) input with f(x) = value.
// prefix must hold inclusive per-word counts of `value` bits as produced by
// value_prefix(); j < total count is the caller's responsibility.
std::vector<std::uint64_t> value_prefix(const TruthTable& t, bool value);
std::uint64_t select_value(const TruthTable& t, const std::vector<std::uint64_t>& prefix,
                           bool value, std::uint64_t j);

}  // namespace bfcert
