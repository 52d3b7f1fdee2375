#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace bfcert {

// An assignment to inputs x1..xn. bits[k] is the value of x(k+1), always 0 or 1.
using Bits = std::vector<std::uint8_t>;

// Text form reads like a binary numeral: the rightmost character is x1, so
// "01" means x2=0, x1=1.
inline Bits parse_bits(const std::string& s) {
  Bits out(s.size());
  for (std::size_t k = 0; k < s.size(); ++k) {
    const char c = s[s.size() - 1 - k];
    if (c != '0' && c != '1') throw std::invalid_argument("bit string must be over {0,1}: " + s);
    out[k] = static_cast<std::uint8_t>(c - '0');
  }
  return out;
}

inline std::string bits_str(const Bits& x) {
  std::string s(x.size(), '0');
  for (std::size_t k = 0; k < x.size(); ++k)
    if (x[k]) s[x.size() - 1 - k] = '1';
  return s;
}

// Packed-index convention used throughout: bit k of the index is x(k+1),
// i.e. x1 is the least significant bit.
inline std::uint64_t bits_to_index(const Bits& x) {
  std::uint64_t v = 0;
  for (std::size_t k = 0; k < x.size(); ++k)
    if (x[k]) v |= (1ULL << k);
  return v;
}

inline Bits index_to_bits(std::uint64_t v, int n) {
  Bits x(n);
  for (int k = 0; k < n; ++k) x[k] = static_cast<std::uint8_t>((v >> k) & 1);
  return x;
}

inline Bits flip_bit(Bits x, int i) {  // i is 1-based
  x.at(i - 1) ^= 1;
  return x;
}

}  // namespace bfcert
