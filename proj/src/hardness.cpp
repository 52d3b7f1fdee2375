#include "bfcert/hardness.hpp"

#include <algorithm>
#include <bit>
#include <stdexcept>

namespace bfcert {

namespace {

void check_spec(const DisperserSpec& spec) {
  if (spec.blocks < 1 || spec.block_size < 1)
    throw std::invalid_argument("disperser needs at least one block of at least one bit");
}

std::uint32_t next_same_size(std::uint32_t v) {
  const std::uint32_t c = v & -v;
  const std::uint32_t r = v + c;
  return (((r ^ v) >> 2) / c) | r;
}

}  // namespace

std::vector<Circuit> blockwise_parity(const DisperserSpec& spec) {
  check_spec(spec);
  const int m = spec.total_inputs();
  std::vector<Circuit> out;
  out.reserve(spec.blocks);
  for (int j = 0; j < spec.blocks; ++j) {
    Gate parity{Op::Xor, {}};
    for (int b = 0; b < spec.block_size; ++b) parity.args.push_back(Ref::input(j * spec.block_size + b + 1));
    out.push_back(Circuit(m, {parity}, Ref::gate(0)));
  }
  return out;
}

Bits blockwise_parity_eval(const DisperserSpec& spec, const Bits& z) {
  check_spec(spec);
  if (static_cast<int>(z.size()) != spec.total_inputs())
    throw std::invalid_argument("input length mismatch");
  Bits y(spec.blocks, 0);
  for (int j = 0; j < spec.blocks; ++j) {
    std::uint8_t parity = 0;
    for (int b = 0; b < spec.block_size; ++b) parity ^= z[j * spec.block_size + b];
    y[j] = parity;
  }
  return y;
}

BitfixingResult check_bitfixing(const DisperserSpec& spec, int t) {
  check_spec(spec);
  const int m = spec.total_inputs();
  const int n = spec.blocks;
  if (m > 16) throw std::invalid_argument("bit-fixing check capped at 16 inputs");
  if (t < 0) throw std::invalid_argument("t must be nonnegative");
  const int size = std::min(t, m);

  const std::uint32_t full = (1u << m) - 1;
  const std::uint64_t targets = 1ULL << n;
  std::vector<std::uint8_t> seen(targets);

  // block(i): which output bit input i feeds.
  auto block_of = [&](int i) { return i / spec.block_size; };

  std::uint32_t s_mask = size == 0 ? 0 : ((1u << size) - 1);
  while (true) {
    std::vector<int> s_bits;
    for (int i = 0; i < m; ++i) {
      if ((s_mask >> i) & 1) s_bits.push_back(i);
    }
    std::vector<int> free_bits;
    for (int i = 0; i < m; ++i) {
      if (!((s_mask >> i) & 1)) free_bits.push_back(i);
    }

    for (std::uint32_t u = 0; u < (1u << size); ++u) {
      std::fill(seen.begin(), seen.end(), 0);
      // Base point: fixed bits from u, free bits all zero.
      std::uint32_t y = 0;
      for (int a = 0; a < size; ++a) {
        if ((u >> a) & 1) y ^= 1u << block_of(s_bits[a]);
      }
      std::uint64_t reached = 0;
      seen[y] = 1;
      ++reached;
      // Gray-code walk over the free bits: one flip per step, so the image
      // point moves by one output-bit toggle.
      const std::uint64_t steps = 1ULL << free_bits.size();
      std::uint64_t code = 0;
      for (std::uint64_t step = 1; step < steps && reached < targets; ++step) {
        const std::uint64_t next = step ^ (step >> 1);
        const std::uint64_t changed = code ^ next;
        code = next;
        int bit = 0;
        while (!((changed >> bit) & 1)) ++bit;
        y ^= 1u << block_of(free_bits[bit]);
        if (!seen[y]) {
          seen[y] = 1;
          ++reached;
        }
      }
      if (reached < targets) {
        BitfixingResult bad;
        bad.full_image = false;
        for (int a = 0; a < size; ++a) bad.fixed_indices.push_back(s_bits[a] + 1);
        bad.fixed_values.resize(size);
        for (int a = 0; a < size; ++a) bad.fixed_values[a] = (u >> a) & 1;
        for (std::uint64_t target = 0; target < targets; ++target) {
          if (!seen[target]) {
            bad.missing_output = index_to_bits(target, n);
            break;
          }
        }
        return bad;
      }
    }

    if (size == 0) break;
    const std::uint32_t nxt = next_same_size(s_mask);
    if (nxt > full) break;
    s_mask = nxt;
  }
  return {};
}

Circuit gen_gappedcert(const Circuit& phi, int ell) {
  DisperserSpec spec{phi.num_inputs(), ell};
  return compose(phi, blockwise_parity(spec));
}

Circuit gen_address(int r) {
  if (r < 2 || (r & (r - 1)) != 0) throw std::invalid_argument("r must be a power of two, >= 2");
  const int a = std::countr_zero(static_cast<unsigned>(r));
  const int n = a + r;

  std::vector<Gate> gates;
  // One NOT per address bit, so both literals are on hand.
  for (int b = 0; b < a; ++b) gates.push_back({Op::Not, {Ref::input(b + 1)}});
  std::vector<Ref> terms;
  for (int v = 0; v < r; ++v) {
    Gate term{Op::And, {}};
    for (int b = 0; b < a; ++b) {
      term.args.push_back(((v >> b) & 1) ? Ref::input(b + 1) : Ref::gate(b));
    }
    term.args.push_back(Ref::input(a + v + 1));
    gates.push_back(term);
    terms.push_back(Ref::gate(static_cast<int>(gates.size()) - 1));
  }
  gates.push_back({Op::Or, terms});
  return Circuit(n, std::move(gates), Ref::gate(a + r));
}

bool mmww_accepts(const MmwwInstance& inst, const Bits& x) {
  if (static_cast<int>(x.size()) != inst.n) throw std::invalid_argument("input length mismatch");
  Bits xy(2 * inst.n, 0);
  std::copy(x.begin(), x.end(), xy.begin());
  for (std::uint64_t yi = 0; yi < (1ULL << inst.n); ++yi) {
    const Bits y = index_to_bits(yi, inst.n);
    std::copy(y.begin(), y.end(), xy.begin() + inst.n);
    if (!evaluate(inst.checker, xy)) return false;
  }
  return true;
}

void verify_mmww_promise(const MmwwInstance& inst) {
  if (inst.n < 1 || inst.n > 8) throw std::invalid_argument("promise check capped at n = 8");
  if (inst.checker.num_inputs() != 2 * inst.n)
    throw std::invalid_argument("checker must take x and y of equal length");
  if (inst.k < 0) throw std::invalid_argument("k must be nonnegative");

  std::vector<bool> accepted(1ULL << inst.n);
  int min_weight = inst.n + 1;
  for (std::uint64_t xi = 0; xi < (1ULL << inst.n); ++xi) {
    accepted[xi] = mmww_accepts(inst, index_to_bits(xi, inst.n));
    if (accepted[xi]) min_weight = std::min(min_weight, std::popcount(xi));
  }

  for (std::uint64_t xi = 0; xi < (1ULL << inst.n); ++xi) {
    if (!accepted[xi]) continue;
    for (int i = 0; i < inst.n; ++i) {
      const std::uint64_t up = xi | (1ULL << i);
      if (!accepted[up])
        throw std::runtime_error(inst.name + ": accepted set is not upward closed");
    }
  }

  const bool has_light = min_weight <= inst.k;
  if (inst.tag == PromiseTag::Yes && !has_light)
    throw std::runtime_error(inst.name + ": YES tag but no accepted input of weight <= k");
  if (inst.tag == PromiseTag::No && has_light)
    throw std::runtime_error(inst.name + ": NO tag but a light input is accepted");
}

std::vector<MmwwInstance> mmww_fixtures() {
  std::vector<MmwwInstance> out;

  // n = 1, checker(x, y) = x1: accepts exactly x = 1, weight 1.
  out.push_back({"dict", make_dictator(2, 1), 1, 1, PromiseTag::Yes});

  // n = 1, checker constant 1: accepts everything, weight 0.
  out.push_back({"all-pass", make_const(2, true), 1, 0, PromiseTag::Yes});

  // n = 2, checker(x, y) = x1 and x2: accepts only 11.
  {
    Gate both{Op::And, {Ref::input(1), Ref::input(2)}};
    Circuit c(4, {both}, Ref::gate(0));
    out.push_back({"and2-yes", c, 2, 2, PromiseTag::Yes});
    out.push_back({"and2-no", c, 2, 1, PromiseTag::No});
  }

  // n = 2, checker(x, y) = x1 or x2: minimum accepted weight 1.
  {
    Gate either{Op::Or, {Ref::input(1), Ref::input(2)}};
    out.push_back({"or2", Circuit(4, {either}, Ref::gate(0)), 2, 1, PromiseTag::Yes});
  }

  // n = 2, checker(x, y) = x1 or (x2 and y1): the y-dependence rejects
  // x = 01 (take y1 = 0), so the accepted set is {10, 11}.
  {
    Gate guard{Op::And, {Ref::input(2), Ref::input(3)}};
    Gate top{Op::Or, {Ref::input(1), Ref::gate(0)}};
    out.push_back({"guarded-or", Circuit(4, {guard, top}, Ref::gate(1)), 2, 1, PromiseTag::Yes});
  }

  return out;
}

MmwwReduction gen_mmww_reduction(const MmwwInstance& inst, int ell) {
  if (ell < 1) throw std::invalid_argument("block size must be positive");
  if (inst.checker.num_inputs() != 2 * inst.n)
    throw std::invalid_argument("checker must take x and y of equal length");
  const int n = inst.n;
  const int m = n * ell;

  // Inner functions over the shared n + m input space: the first n checker
  // inputs pass x through, the next n take parities of z blocks.
  std::vector<Circuit> inners;
  inners.reserve(2 * n);
  for (int i = 1; i <= n; ++i) inners.push_back(make_dictator(n + m, i));
  for (int j = 0; j < n; ++j) {
    Gate parity{Op::Xor, {}};
    for (int b = 0; b < ell; ++b) parity.args.push_back(Ref::input(n + j * ell + b + 1));
    inners.push_back(Circuit(n + m, {parity}, Ref::gate(0)));
  }

  MmwwReduction red{compose(inst.checker, inners), Bits(n + m, 1), n, m, ell, inst.k, inst.tag};
  return red;
}

}  // namespace bfcert
