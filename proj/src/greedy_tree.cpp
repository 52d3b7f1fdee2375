#include "bfcert/greedy_tree.hpp"

#include "bfcert/influence.hpp"

namespace bfcert {

Restriction node_restriction(const GreedyTree& tree, int level, std::uint64_t p) {
  if (level < 0 || level > tree.depth) throw std::invalid_argument("level out of range");
  if (p >= (1ULL << level)) throw std::invalid_argument("node index out of range");
  Restriction rho;
  for (int s = 0; s < level; ++s) {
    const std::uint64_t ancestor = p >> (level - s);
    const bool bit = (p >> (level - s - 1)) & 1;
    rho.set(tree.query[s][ancestor], bit);
  }
  return rho;
}

GreedyTree build_greedy_tree(OracleBackend& b, const Circuit& c, int depth,
                             const TreeConfig& cfg) {
  const int n = c.num_inputs();
  if (depth < 0 || depth > n) throw DepthExceedsInputs("tree depth must lie in [0, n]");

  GreedyTree tree;
  tree.depth = depth;
  tree.query.resize(depth);
  tree.node_value.resize(depth + 1);

  for (int t = 0; t <= depth; ++t) {
    const std::uint64_t width = 1ULL << t;
    tree.node_value[t].resize(width);
    if (t < depth) tree.query[t].resize(width);
    for (std::uint64_t p = 0; p < width; ++p) {
      const Restriction rho = node_restriction(tree, t, p);
      const Circuit sub = restrict_circuit(c, rho);
      const ConstancyResult constancy = is_constant(b, sub);
      tree.node_value[t][p] = constancy.constant ? static_cast<std::int8_t>(constancy.value)
                                                 : std::int8_t{-1};
      if (t == depth) continue;

      std::vector<int> free_vars;
      for (int i = 1; i <= n; ++i) {
        if (!rho.assigns(i)) free_vars.push_back(i);
      }

      int chosen = free_vars.front();
      if (!constancy.constant) {
        if (cfg.mode == TreeMode::Estimated) {
          const std::uint64_t node_seed =
              derive_seed(cfg.seed, (static_cast<std::uint64_t>(t) << 32) | p);
          double best = 0.0;
          for (int i : free_vars) {
            SamplerConfig sub_cfg{derive_seed(node_seed, static_cast<std::uint64_t>(i))};
            const double est =
                estimate_balanced_influence(b, sub_cfg, sub, i, cfg.eps, cfg.delta / n);
            if (est > best) {
              best = est;
              chosen = i;
            }
          }
        } else {
          Rat best(-1);
          for (int i : free_vars) {
            const Rat inf = exact_influence(b, sub, i);
            if (inf > best) {
              best = inf;
              chosen = i;
            }
          }
        }
      }
      tree.query[t][p] = chosen;
    }
  }
  return tree;
}

std::vector<Rat> potential_trace(OracleBackend& b, const Circuit& c, const GreedyTree& tree) {
  std::vector<Rat> phi(tree.depth + 1, Rat(0));
  for (int t = 0; t <= tree.depth; ++t) {
    Rat sum(0);
    for (std::uint64_t p = 0; p < (1ULL << t); ++p) {
      const Circuit sub = restrict_circuit(c, node_restriction(tree, t, p));
      sum += exact_total_influence(b, sub);
    }
    phi[t] = sum / Rat(pow2(t));
  }
  return phi;
}

}  // namespace bfcert
