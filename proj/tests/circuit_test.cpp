#include "doctest.h"

#include "bfcert/circuit.hpp"
#include "support/corpus.hpp"

using namespace bfcert;
using test::random_circuit;

namespace {

// Truth table as a packed integer, via plain evaluation. Bit x = f(x).
std::uint64_t table_bits(const Circuit& c) {
  std::uint64_t t = 0;
  for (std::uint64_t x = 0; x < (1ULL << c.num_inputs()); ++x) {
    if (evaluate(c, index_to_bits(x, c.num_inputs()))) t |= 1ULL << x;
  }
  return t;
}

}  // namespace

TEST_CASE("gate evaluation matches hand tables") {
  CHECK(table_bits(make_and(2)) == 0b1000);
  CHECK(table_bits(make_or(2)) == 0b1110);
  CHECK(table_bits(make_xor(2)) == 0b0110);
  CHECK(table_bits(make_dictator(2, 1)) == 0b1010);
  CHECK(table_bits(make_dictator(2, 2)) == 0b1100);
  CHECK(table_bits(make_const(2, false)) == 0b0000);
  CHECK(table_bits(make_const(2, true)) == 0b1111);
  CHECK(table_bits(make_identity()) == 0b10);

  Gate nand{Op::Not, {Ref::gate(0)}};
  Gate both{Op::And, {Ref::input(1), Ref::input(2)}};
  Circuit c(2, {both, nand}, Ref::gate(1));
  CHECK(table_bits(c) == 0b0111);
}

TEST_CASE("three input gates") {
  CHECK(table_bits(make_and(3)) == 0x80);
  CHECK(table_bits(make_xor(3)) == 0b10010110);
}

TEST_CASE("construction rejects malformed gate lists") {
  CHECK_THROWS_AS(Circuit(0, {}, Ref::input(1)), CircuitError);
  CHECK_THROWS_AS(Circuit(2, {{Op::Not, {Ref::input(1), Ref::input(2)}}}, Ref::gate(0)),
                  CircuitError);
  CHECK_THROWS_AS(Circuit(2, {{Op::And, {}}}, Ref::gate(0)), CircuitError);
  CHECK_THROWS_AS(Circuit(2, {{Op::Not, {Ref::input(3)}}}, Ref::gate(0)), CircuitError);
  // Operand pointing at itself (not strictly earlier).
  CHECK_THROWS_AS(Circuit(2, {{Op::Not, {Ref::gate(0)}}}, Ref::gate(0)), CircuitError);
  // Operand pointing forward.
  CHECK_THROWS_AS(Circuit(2,
                          {{Op::Not, {Ref::gate(1)}}, {Op::Not, {Ref::input(1)}}},
                          Ref::gate(1)),
                  CircuitError);
  // Output out of range.
  CHECK_THROWS_AS(Circuit(2, {{Op::Not, {Ref::input(1)}}}, Ref::gate(5)), CircuitError);
  // Const gates take no operands.
  CHECK_THROWS_AS(Circuit(1, {{Op::Const0, {Ref::input(1)}}}, Ref::gate(0)), CircuitError);
}

TEST_CASE("evaluate validates input length") {
  CHECK_THROWS(evaluate(make_and(2), Bits{1}));
  CHECK_THROWS(evaluate(make_and(2), Bits{1, 0, 1}));
}

TEST_CASE("restriction object semantics") {
  Restriction rho;
  CHECK(rho.empty());
  rho.set(2, true);
  rho.set(1, false);
  CHECK(rho.size() == 2);
  CHECK(rho.assigns(1));
  CHECK(rho.assigns(2));
  CHECK_FALSE(rho.assigns(3));
  CHECK(rho.at(2) == true);
  CHECK(rho.support() == std::vector<int>{1, 2});
  CHECK_THROWS(rho.set(1, true));   // duplicate
  CHECK_THROWS(rho.set(0, false));  // indices are 1-based
}

TEST_CASE("restrict_circuit pins coordinates but keeps the index space") {
  const Circuit c = make_and(2);
  Restriction rho;
  rho.set(1, true);
  const Circuit r = restrict_circuit(c, rho);
  CHECK(r.num_inputs() == 2);
  CHECK(table_bits(r) == table_bits(make_dictator(2, 2)));

  Restriction zero;
  zero.set(1, false);
  CHECK(table_bits(restrict_circuit(c, zero)) == 0);
}

TEST_CASE("restrict_circuit agrees with pinned evaluation on random circuits") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 200; ++trial) {
    const int n = 2 + static_cast<int>(rng() % 5);
    const Circuit c = random_circuit(rng, n, 12);
    Restriction rho;
    for (int i = 1; i <= n; ++i) {
      if (rng() % 3 == 0) rho.set(i, rng() % 2 == 1);
    }
    const Circuit r = restrict_circuit(c, rho);
    REQUIRE(r.num_inputs() == n);
    for (std::uint64_t xi = 0; xi < (1ULL << n); ++xi) {
      Bits x = index_to_bits(xi, n);
      Bits pinned = x;
      for (int i : rho.support()) pinned[i - 1] = rho.at(i) ? 1 : 0;
      CHECK(evaluate(r, x) == evaluate(c, pinned));
    }
  }
}

TEST_CASE("negate complements the table") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 50; ++trial) {
    const int n = 1 + static_cast<int>(rng() % 5);
    const Circuit c = random_circuit(rng, n, 10);
    const std::uint64_t full = n >= 6 ? ~0ULL : ((1ULL << (1ULL << n)) - 1);
    CHECK(table_bits(negate(c)) == (~table_bits(c) & full));
  }
}

TEST_CASE("compose wires inner outputs into outer inputs") {
  // Outer AND of two disjoint XORs over a shared 4-input space.
  Gate left{Op::Xor, {Ref::input(1), Ref::input(2)}};
  Gate right{Op::Xor, {Ref::input(3), Ref::input(4)}};
  const Circuit f = compose(make_and(2), {Circuit(4, {left}, Ref::gate(0)),
                                          Circuit(4, {right}, Ref::gate(0))});
  CHECK(f.num_inputs() == 4);
  CHECK(evaluate(f, parse_bits("1010")) == true);   // x4x3x2x1: x1=0,x2=1 and x3=0,x4=1
  CHECK(evaluate(f, parse_bits("1011")) == false);  // left block 11 has parity 0
  for (std::uint64_t xi = 0; xi < 16; ++xi) {
    const Bits x = index_to_bits(xi, 4);
    const bool expect = ((x[0] ^ x[1]) & (x[2] ^ x[3])) != 0;
    CHECK(evaluate(f, x) == expect);
  }

  CHECK_THROWS(compose(make_and(2), {make_identity()}));  // arity mismatch
  // Inners must share one input space.
  CHECK_THROWS(compose(make_and(2), {make_dictator(3, 1), make_dictator(4, 2)}));
}

TEST_CASE("sensitivity gadget marks exactly the sensitive points") {
  std::mt19937_64 rng(13);
  for (int trial = 0; trial < 60; ++trial) {
    const int n = 1 + static_cast<int>(rng() % 5);
    const Circuit c = random_circuit(rng, n, 10);
    for (int i = 1; i <= n; ++i) {
      const Circuit g = sensitivity_gadget(c, i);
      REQUIRE(g.num_inputs() == n);
      for (std::uint64_t xi = 0; xi < (1ULL << n); ++xi) {
        const Bits x = index_to_bits(xi, n);
        const bool sens = evaluate(c, x) != evaluate(c, flip_bit(x, i));
        CHECK(evaluate(g, x) == sens);
      }
    }
  }
}

TEST_CASE("structural equality and identity") {
  const Circuit a = make_and(2);
  const Circuit b = make_and(2);
  CHECK(a == b);
  CHECK(a.uid() != b.uid());
  const Circuit copy = a;  // copies keep the uid: same object identity for caching
  CHECK(copy.uid() == a.uid());
}

TEST_CASE("bit string convention reads like a binary numeral") {
  const Bits x = parse_bits("01");
  REQUIRE(x.size() == 2);
  CHECK(x[0] == 1);  // x1 is the rightmost character
  CHECK(x[1] == 0);
  CHECK(bits_str(x) == "01");
  CHECK(bits_to_index(x) == 1);
  CHECK(index_to_bits(6, 3) == parse_bits("110"));
  CHECK_THROWS(parse_bits("0a1"));
}
