#pragma once

#include <string>
#include <vector>

#include "bfcert/circuit.hpp"

namespace bfcert {

// CNF with DIMACS conventions: variables 1..num_vars, a clause is a list of
// nonzero literals, negative meaning negated.
struct Cnf {
  int num_vars = 0;
  std::vector<std::vector<int>> clauses;
  // input_var[k] is the CNF variable carrying circuit input x(k+1).
  std::vector<int> input_var;
};

// Tseitin encoding of "f(x) = polarity". Every gate gets a defining variable
// and clauses, plus one unit clause forcing the output literal, so CNF models
// are in bijection with {x : f(x) = polarity} via input_var projection.
Cnf to_cnf(const Circuit& c, bool polarity);

std::string to_dimacs(const Cnf& cnf);

// Projects a DIMACS-style assignment (sign per variable) back to circuit
// inputs. assignment[v] holds the sign of variable v (index 0 unused).
Bits project_model(const Cnf& cnf, const std::vector<bool>& assignment);

}  // namespace bfcert
