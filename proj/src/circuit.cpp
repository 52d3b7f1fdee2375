#include "bfcert/circuit.hpp"

#include <algorithm>
#include <atomic>
#include <optional>

namespace bfcert {

const char* op_name(Op op) {
  switch (op) {
    case Op::Const0: return "CONST0";
    case Op::Const1: return "CONST1";
    case Op::Not: return "NOT";
    case Op::And: return "AND";
    case Op::Or: return "OR";
    case Op::Xor: return "XOR";
  }
  return "?";
}

namespace {

std::atomic<std::uint64_t> next_uid{1};

void check_arity(const Gate& g, std::size_t pos) {
  const auto k = g.args.size();
  bool ok = true;
  switch (g.op) {
    case Op::Const0:
    case Op::Const1: ok = (k == 0); break;
    case Op::Not: ok = (k == 1); break;
    case Op::And:
    case Op::Or:
    case Op::Xor: ok = (k >= 1); break;
  }
  if (!ok)
    throw CircuitError("gate " + std::to_string(pos + 1) + " (" + op_name(g.op) +
                       ") has invalid arity " + std::to_string(k));
}

void check_ref(Ref r, int n, std::size_t gates_before, const char* where) {
  if (r.is_input()) {
    if (r.input_index() < 1 || r.input_index() > n)
      throw CircuitError(std::string(where) + ": input x" + std::to_string(r.input_index()) +
                         " out of range for " + std::to_string(n) + " inputs");
  } else {
    if (r.gate_index() < 0 || static_cast<std::size_t>(r.gate_index()) >= gates_before)
      throw CircuitError(std::string(where) + ": gate operand must reference an earlier gate");
  }
}

}  // namespace

Circuit::Circuit(int num_inputs, std::vector<Gate> gates, Ref output)
    : n_(num_inputs), gates_(std::move(gates)), output_(output), uid_(next_uid.fetch_add(1)) {
  if (n_ < 1) throw CircuitError("circuit needs at least one input");
  for (std::size_t g = 0; g < gates_.size(); ++g) {
    check_arity(gates_[g], g);
    for (Ref a : gates_[g].args) check_ref(a, n_, g, "gate operand");
  }
  check_ref(output_, n_, gates_.size(), "output");
}

bool evaluate(const Circuit& c, const Bits& x) {
  if (static_cast<int>(x.size()) != c.num_inputs())
    throw CircuitError("input length " + std::to_string(x.size()) + " does not match " +
                       std::to_string(c.num_inputs()) + " circuit inputs");
  std::vector<std::uint8_t> val(c.gates().size());
  auto read = [&](Ref r) -> std::uint8_t {
    return r.is_input() ? x[r.input_index() - 1] : val[r.gate_index()];
  };
  for (std::size_t g = 0; g < c.gates().size(); ++g) {
    const Gate& gate = c.gates()[g];
    std::uint8_t v = 0;
    switch (gate.op) {
      case Op::Const0: v = 0; break;
      case Op::Const1: v = 1; break;
      case Op::Not: v = read(gate.args[0]) ^ 1; break;
      case Op::And:
        v = 1;
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
  return read(c.output()) != 0;
}

namespace {

// Value a sub-expression folds to during simplification: a known constant or
// a reference into the rebuilt gate list (possibly an input).
struct Folded {
  bool is_const = false;
  bool const_val = false;
  Ref ref = Ref::input(1);

  static Folded constant(bool b) {
    Folded f;
    f.is_const = true;
    f.const_val = b;
    return f;
  }
  static Folded reference(Ref r) {
    Folded f;
    f.ref = r;
    return f;
  }
};

// Rebuilds the gate list with the given inputs pinned, folding constants,
// dropping neutral operands, cancelling duplicates, and eliminating dead
// gates. Pinned inputs simply disappear from the support; the index space is
// untouched.
Circuit simplify(int n, const std::vector<Gate>& gates, Ref output,
                 const std::vector<std::optional<bool>>& pin) {
  std::vector<Folded> val(gates.size());
  std::vector<Gate> out_gates;
  std::vector<Op> out_op;  // op of each emitted gate, for double-NOT folding

  auto resolve = [&](Ref r) -> Folded {
    if (r.is_input()) {
      int i = r.input_index();
      if (pin[i - 1].has_value()) return Folded::constant(*pin[i - 1]);
      return Folded::reference(r);
    }
    return val[r.gate_index()];
  };

  auto emit = [&](Op op, std::vector<Ref> args) -> Ref {
    out_gates.push_back(Gate{op, std::move(args)});
    out_op.push_back(op);
    return Ref::gate(static_cast<int>(out_gates.size()) - 1);
  };

  auto emit_not = [&](Ref r) -> Ref {
    // NOT(NOT(y)) -> y
    if (!r.is_input() && out_op[r.gate_index()] == Op::Not)
      return out_gates[r.gate_index()].args[0];
    return emit(Op::Not, {r});
  };

  for (std::size_t g = 0; g < gates.size(); ++g) {
    const Gate& gate = gates[g];
    switch (gate.op) {
      case Op::Const0: val[g] = Folded::constant(false); break;
      case Op::Const1: val[g] = Folded::constant(true); break;
      case Op::Not: {
        Folded a = resolve(gate.args[0]);
        val[g] = a.is_const ? Folded::constant(!a.const_val) : Folded::reference(emit_not(a.ref));
        break;
      }
      case Op::And:
      case Op::Or: {
        const bool absorbing = (gate.op == Op::Or);  // OR is killed by 1, AND by 0
        bool dead = false;
        std::vector<Ref> refs;
        for (Ref raw : gate.args) {
          Folded a = resolve(raw);
          if (a.is_const) {
            if (a.const_val == absorbing) {
              dead = true;
              break;
            }
            continue;  // neutral operand
          }
          if (std::find(refs.begin(), refs.end(), a.ref) == refs.end()) refs.push_back(a.ref);
        }
        if (dead)
          val[g] = Folded::constant(absorbing);
        else if (refs.empty())
          val[g] = Folded::constant(!absorbing);
        else if (refs.size() == 1)
          val[g] = Folded::reference(refs[0]);
        else
          val[g] = Folded::reference(emit(gate.op, std::move(refs)));
        break;
      }
      case Op::Xor: {
        bool parity = false;
        std::vector<Ref> refs;
        for (Ref raw : gate.args) {
          Folded a = resolve(raw);
          if (a.is_const) {
            parity ^= a.const_val;
            continue;
          }
          auto it = std::find(refs.begin(), refs.end(), a.ref);
          if (it != refs.end())
            refs.erase(it);  // y XOR y cancels
          else
            refs.push_back(a.ref);
        }
        if (refs.empty())
          val[g] = Folded::constant(parity);
        else if (refs.size() == 1)
          val[g] = Folded::reference(parity ? emit_not(refs[0]) : refs[0]);
        else {
          Ref r = emit(Op::Xor, std::move(refs));
          val[g] = Folded::reference(parity ? emit_not(r) : r);
        }
        break;
      }
    }
  }

  Folded out = resolve(output);
  if (out.is_const) return Circuit(n, {Gate{out.const_val ? Op::Const1 : Op::Const0, {}}}, Ref::gate(0));

  // Drop gates the output never reads.
  std::vector<bool> live(out_gates.size(), false);
  if (!out.ref.is_input()) {
    live[out.ref.gate_index()] = true;
    for (int g = static_cast<int>(out_gates.size()) - 1; g >= 0; --g) {
      if (!live[g]) continue;
      for (Ref a : out_gates[g].args)
        if (!a.is_input()) live[a.gate_index()] = true;
    }
  }
  std::vector<int> remap(out_gates.size(), -1);
  std::vector<Gate> kept;
  for (std::size_t g = 0; g < out_gates.size(); ++g) {
    if (!live[g]) continue;
    Gate copy = out_gates[g];
    for (Ref& a : copy.args)
      if (!a.is_input()) a = Ref::gate(remap[a.gate_index()]);
    remap[g] = static_cast<int>(kept.size());
    kept.push_back(std::move(copy));
  }
  Ref final_out = out.ref.is_input() ? out.ref : Ref::gate(remap[out.ref.gate_index()]);
  return Circuit(n, std::move(kept), final_out);
}

}  // namespace

Circuit restrict_circuit(const Circuit& c, const Restriction& rho) {
  std::vector<std::optional<bool>> pin(c.num_inputs());
  for (const auto& [i, b] : rho.assignment) {
    if (i < 1 || i > c.num_inputs())
      throw CircuitError("restriction assigns x" + std::to_string(i) + " outside 1.." +
                         std::to_string(c.num_inputs()));
    pin[i - 1] = b;
  }
  return simplify(c.num_inputs(), c.gates(), c.output(), pin);
}

Circuit negate(const Circuit& c) {
  std::vector<Gate> gates = c.gates();
  gates.push_back(Gate{Op::Not, {c.output()}});
  Circuit raw(c.num_inputs(), std::move(gates), Ref::gate(static_cast<int>(c.gates().size())));
  return simplify(raw.num_inputs(), raw.gates(), raw.output(),
                  std::vector<std::optional<bool>>(raw.num_inputs()));
}

Circuit compose(const Circuit& outer, const std::vector<Circuit>& inners) {
  if (static_cast<int>(inners.size()) != outer.num_inputs())
    throw CircuitError("compose needs exactly one inner circuit per outer input (" +
                       std::to_string(outer.num_inputs()) + " expected, " +
                       std::to_string(inners.size()) + " given)");
  const int m = inners.empty() ? 0 : inners[0].num_inputs();
  for (const Circuit& in : inners)
    if (in.num_inputs() != m)
      throw CircuitError("compose: inner circuits must share one input space");

  std::vector<Gate> gates;
  std::vector<Ref> inner_out;
  inner_out.reserve(inners.size());
  for (const Circuit& in : inners) {
    const int off = static_cast<int>(gates.size());
    for (Gate g : in.gates()) {
      for (Ref& a : g.args)
        if (!a.is_input()) a = Ref::gate(a.gate_index() + off);
      gates.push_back(std::move(g));
    }
    Ref o = in.output();
    inner_out.push_back(o.is_input() ? o : Ref::gate(o.gate_index() + off));
  }
  const int off = static_cast<int>(gates.size());
  for (Gate g : outer.gates()) {
    for (Ref& a : g.args)
      a = a.is_input() ? inner_out[a.input_index() - 1] : Ref::gate(a.gate_index() + off);
    gates.push_back(std::move(g));
  }
  Ref out = outer.output();
  out = out.is_input() ? inner_out[out.input_index() - 1] : Ref::gate(out.gate_index() + off);
  return Circuit(m, std::move(gates), out);
}

Circuit sensitivity_gadget(const Circuit& c, int i) {
  if (i < 1 || i > c.num_inputs())
    throw CircuitError("sensitivity coordinate x" + std::to_string(i) + " out of range");
  std::vector<Gate> gates = c.gates();
  Ref plain_out = c.output();

  const int not_idx = static_cast<int>(gates.size());
  gates.push_back(Gate{Op::Not, {Ref::input(i)}});
  const Ref flipped_i = Ref::gate(not_idx);

  const int off = not_idx + 1;
  auto remap = [&](Ref a) {
    if (a.is_input()) return a.input_index() == i ? flipped_i : a;
    return Ref::gate(a.gate_index() + off);
  };
  for (Gate g : c.gates()) {
    for (Ref& a : g.args) a = remap(a);
    gates.push_back(std::move(g));
  }
  Ref flipped_out = remap(c.output());
  gates.push_back(Gate{Op::Xor, {plain_out, flipped_out}});
  return Circuit(c.num_inputs(), std::move(gates), Ref::gate(static_cast<int>(gates.size()) - 1));
}

Circuit make_const(int n, bool value) {
  return Circuit(n, {Gate{value ? Op::Const1 : Op::Const0, {}}}, Ref::gate(0));
}

namespace {
Circuit fanin_all(int n, Op op) {
  std::vector<Ref> args;
  args.reserve(n);
  for (int i = 1; i <= n; ++i) args.push_back(Ref::input(i));
  return Circuit(n, {Gate{op, std::move(args)}}, Ref::gate(0));
}
}  // namespace

Circuit make_and(int n) { return fanin_all(n, Op::And); }
Circuit make_or(int n) { return fanin_all(n, Op::Or); }
Circuit make_xor(int n) { return fanin_all(n, Op::Xor); }

Circuit make_dictator(int n, int i) { return Circuit(n, {}, Ref::input(i)); }

Circuit make_identity() { return make_dictator(1, 1); }

}  // namespace bfcert
