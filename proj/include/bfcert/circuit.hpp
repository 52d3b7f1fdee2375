#pragma once

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "bfcert/bits.hpp"

namespace bfcert {

class CircuitError : public std::runtime_error {
 public:
  explicit CircuitError(const std::string& what) : std::runtime_error(what) {}
};

enum class Op : std::uint8_t { Const0, Const1, Not, And, Or, Xor };

const char* op_name(Op op);

// Operand of a gate: a primary input x1..xn or an earlier gate.
class Ref {
 public:
  static Ref input(int i) { return Ref(-i); }   // i >= 1
  static Ref gate(int g) { return Ref(g); }     // 0-based index into the gate list

  bool is_input() const { return code_ < 0; }
  int input_index() const { return -code_; }    // 1-based
  int gate_index() const { return code_; }

  friend bool operator==(const Ref& a, const Ref& b) { return a.code_ == b.code_; }

 private:
  explicit Ref(std::int32_t code) : code_(code) {}
  std::int32_t code_;
};

struct Gate {
  Op op;
  std::vector<Ref> args;

  friend bool operator==(const Gate& a, const Gate& b) { return a.op == b.op && a.args == b.args; }
};

// Partial assignment of inputs. Indices are 1-based and kept sorted;
// assigning the same index twice is an error at the point of use.
struct Restriction {
  std::map<int, bool> assignment;

  bool empty() const { return assignment.empty(); }
  int size() const { return static_cast<int>(assignment.size()); }
  bool assigns(int i) const { return assignment.count(i) != 0; }
  bool at(int i) const { return assignment.at(i); }
  void set(int i, bool b) {
    if (i < 1) throw CircuitError("restriction index must be >= 1");
    if (assigns(i)) throw CircuitError("restriction already assigns x" + std::to_string(i));
    assignment.emplace(i, b);
  }
  std::vector<int> support() const {
    std::vector<int> s;
    s.reserve(assignment.size());
    for (const auto& [i, b] : assignment) s.push_back(i);
    return s;
  }

  friend bool operator==(const Restriction& a, const Restriction& b) {
    return a.assignment == b.assignment;
  }
};

// A claimed certificate: fixing anchor's bits on `indices` pins the function
// to claimed_value. Validity is checked by the oracle, not assumed here.
struct Certificate {
  std::vector<int> indices;  // sorted ascending, 1-based
  Bits anchor;
  bool claimed_value = false;
};

// Immutable gate DAG over inputs x1..xn with a single output.
// Gate operands may only point at inputs or strictly earlier gates, so the
// gate list is already a topological order.
class Circuit {
 public:
  Circuit(int num_inputs, std::vector<Gate> gates, Ref output);

  int num_inputs() const { return n_; }
  const std::vector<Gate>& gates() const { return gates_; }
  Ref output() const { return output_; }

  // Stable identity for caching evaluated tables. Structural copies get
  // distinct ids; that only costs a re-evaluation, never correctness.
  std::uint64_t uid() const { return uid_; }

  friend bool operator==(const Circuit& a, const Circuit& b) {
    return a.n_ == b.n_ && a.gates_ == b.gates_ && a.output_ == b.output_;
  }

 private:
  int n_;
  std::vector<Gate> gates_;
  Ref output_;
  std::uint64_t uid_;
};

bool evaluate(const Circuit& c, const Bits& x);

// Substitutes constants for the assigned inputs and folds what that exposes.
// The input space is preserved: the result is still a function of x1..xn and
// ignores the assigned coordinates, so indices stay comparable across calls.
Circuit restrict_circuit(const Circuit& c, const Restriction& rho);

Circuit negate(const Circuit& c);

// outer has n inputs; inners are n circuits over a shared m-input space.
// Result g(x) = outer(inner1(x), ..., innern(x)) over m inputs.
Circuit compose(const Circuit& outer, const std::vector<Circuit>& inners);

// g_i(x) = f(x) XOR f(x with bit i flipped); ones of g_i are exactly the
// inputs where f is sensitive to coordinate i.
Circuit sensitivity_gadget(const Circuit& c, int i);

// Small factories used by generators and tests.
Circuit make_const(int n, bool value);
Circuit make_and(int n);
Circuit make_or(int n);
Circuit make_xor(int n);
Circuit make_dictator(int n, int i);  // f(x) = x_i
Circuit make_identity();              // one input, f(x) = x1

}  // namespace bfcert
