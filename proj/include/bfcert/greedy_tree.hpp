#pragma once

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "bfcert/circuit.hpp"
#include "bfcert/oracle.hpp"
#include "bfcert/rational.hpp"
#include "bfcert/rng.hpp"

namespace bfcert {

class DepthExceedsInputs : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

enum class TreeMode { ExactInfluence, ExactBalanced, Estimated };

struct TreeConfig {
  TreeMode mode = TreeMode::ExactInfluence;
  double eps = 0.05;    // Estimated mode only
  double delta = 0.01;  // Estimated mode: per-node failure budget, split across coordinates
  std::uint64_t seed = kDefaultSeed;
};

// Complete binary decision tree of the requested depth. Level t has 2^t
// nodes; node (t, p) reaches its children (t+1, 2p) on answer 0 and
// (t+1, 2p+1) on answer 1. Every level is fully populated: a node whose
// subfunction is already constant still queries (the lowest free variable).
struct GreedyTree {
  int depth = 0;
  // query[t][p]: variable queried at node (t, p), for t in [0, depth).
  std::vector<std::vector<int>> query;
  // node_value[t][p] for t in [0, depth]: 0 or 1 when the node's subfunction
  // is constant, -1 when it still depends on its free variables.
  std::vector<std::vector<std::int8_t>> node_value;
};

// The assignments accumulated along the path from the root to node (t, p).
Restriction node_restriction(const GreedyTree& tree, int level, std::uint64_t p);

// At each node, query the free variable with the largest influence of the
// node's subfunction (ties to the lowest index). The two exact modes pick
// identical variables on non-constant nodes, since balanced influence is
// influence scaled by the positive constant 1/(4 Var); Estimated mode picks
// the argmax of sampled balanced-influence estimates instead.
GreedyTree build_greedy_tree(OracleBackend& b, const Circuit& c, int depth,
                             const TreeConfig& cfg = {});

// phi(t) = average over the 2^t level-t nodes of the subfunction's total
// influence, for t = 0..depth. Exact rationals.
std::vector<Rat> potential_trace(OracleBackend& b, const Circuit& c, const GreedyTree& tree);

}  // namespace bfcert
