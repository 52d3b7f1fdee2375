#include "bfcert/cnf.hpp"

#include <sstream>

namespace bfcert {

namespace {

void equal_clauses(Cnf& cnf, int z, int a) {
  cnf.clauses.push_back({-z, a});
  cnf.clauses.push_back({z, -a});
}

void xor2_clauses(Cnf& cnf, int z, int a, int b) {
  cnf.clauses.push_back({-a, -b, -z});
  cnf.clauses.push_back({a, b, -z});
  cnf.clauses.push_back({a, -b, z});
  cnf.clauses.push_back({-a, b, z});
}

}  // namespace

Cnf to_cnf(const Circuit& c, bool polarity) {
  Cnf cnf;
  const int n = c.num_inputs();
  cnf.input_var.resize(n);
  for (int i = 0; i < n; ++i) cnf.input_var[i] = i + 1;
  cnf.num_vars = n;

  std::vector<int> gate_var(c.gates().size());
  auto lit = [&](Ref r) { return r.is_input() ? r.input_index() : gate_var[r.gate_index()]; };

  for (std::size_t g = 0; g < c.gates().size(); ++g) {
    const Gate& gate = c.gates()[g];
    const int z = ++cnf.num_vars;
    gate_var[g] = z;
    switch (gate.op) {
      case Op::Const0: cnf.clauses.push_back({-z}); break;
      case Op::Const1: cnf.clauses.push_back({z}); break;
      case Op::Not: cnf.clauses.push_back({-z, -lit(gate.args[0])});
                    cnf.clauses.push_back({z, lit(gate.args[0])});
                    break;
      case Op::And: {
        if (gate.args.size() == 1) {
          equal_clauses(cnf, z, lit(gate.args[0]));
          break;
        }
        std::vector<int> big{z};
        for (Ref a : gate.args) {
          cnf.clauses.push_back({-z, lit(a)});
          big.push_back(-lit(a));
        }
        cnf.clauses.push_back(std::move(big));
        break;
      }
      case Op::Or: {
        if (gate.args.size() == 1) {
          equal_clauses(cnf, z, lit(gate.args[0]));
          break;
        }
        std::vector<int> big{-z};
        for (Ref a : gate.args) {
          cnf.clauses.push_back({-lit(a), z});
          big.push_back(lit(a));
        }
        cnf.clauses.push_back(std::move(big));
        break;
      }
      case Op::Xor: {
        if (gate.args.size() == 1) {
          equal_clauses(cnf, z, lit(gate.args[0]));
          break;
        }
        // Chain pairwise, introducing a fresh variable per intermediate so
        // every variable stays a function of the inputs.
        int cur = lit(gate.args[0]);
        for (std::size_t k = 1; k < gate.args.size(); ++k) {
          const int out = (k + 1 == gate.args.size()) ? z : ++cnf.num_vars;
          xor2_clauses(cnf, out, cur, lit(gate.args[k]));
          cur = out;
        }
        break;
      }
    }
  }

  const int out = lit(c.output());
  cnf.clauses.push_back({polarity ? out : -out});
  return cnf;
}

std::string to_dimacs(const Cnf& cnf) {
  std::ostringstream os;
  os << "p cnf " << cnf.num_vars << " " << cnf.clauses.size() << "\n";
  for (const auto& cl : cnf.clauses) {
    for (int l : cl) os << l << " ";
    os << "0\n";
  }
  return os.str();
}

Bits project_model(const Cnf& cnf, const std::vector<bool>& assignment) {
  Bits x(cnf.input_var.size());
  for (std::size_t k = 0; k < cnf.input_var.size(); ++k) {
    const int v = cnf.input_var[k];
    x[k] = (v < static_cast<int>(assignment.size()) && assignment[v]) ? 1 : 0;
  }
  return x;
}

}  // namespace bfcert
