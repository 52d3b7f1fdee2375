#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <boost/rational.hpp>

#include <cstdint>
#include <sstream>
#include <string>

namespace bfcert {

using BigInt = boost::multiprecision::cpp_int;

// Exact rational arithmetic. All probability-like quantities in this library
// (variance, influence, branch masses, tree potentials) are dyadic-ish
// rationals derived from model counts, so they stay exact end to end.
using Rat = boost::rational<BigInt>;

inline BigInt pow2(int k) {
  BigInt one = 1;
  return one << k;
}

inline Rat rat_over_pow2(std::uint64_t numerator, int k) {
  return Rat(BigInt(numerator), pow2(k));
}

// Canonical text form "p/q", q > 0, gcd(p, q) = 1. Integers print as "p/1".
inline std::string rat_str(const Rat& r) {
  std::ostringstream os;
  os << r.numerator() << "/" << r.denominator();
  return os.str();
}

inline double rat_double(const Rat& r) {
  return r.numerator().convert_to<double>() / r.denominator().convert_to<double>();
}

}  // namespace bfcert
