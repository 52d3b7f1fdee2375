#pragma once

#include <cstdint>
#include <mutex>
#include <string>

#include "bfcert/cnf.hpp"
#include "bfcert/oracle.hpp"

namespace bfcert {

// Command templates get "{cnf}" replaced by the DIMACS file path (appended if
// the placeholder is absent). Commands run under `timeout` when timeout_sec
// is positive. count_cmd empty means counting is unavailable on this backend.
struct SolverConfig {
  std::string solve_cmd;
  std::string count_cmd;
  int timeout_sec = 60;
};

// NP oracle over a SAT solver subprocess: circuit queries become DIMACS files
// and the solver's stdout is parsed for "s SATISFIABLE" / "s UNSATISFIABLE"
// and "v " model lines. Counting queries (when configured) accept "s mc N" or
// "c s exact arb int N". Any answer this class cannot validate comes back
// Unknown: models are re-checked against the circuit before being trusted.
class ExternalSolverBackend final : public OracleBackend {
 public:
  explicit ExternalSolverBackend(SolverConfig cfg);

  std::string name() const override { return "solver"; }
  bool can_count() const override { return !cfg_.count_cmd.empty(); }
  SatResult find_model(const Circuit& c, bool polarity) override;
  std::uint64_t count_models(const Circuit& c, bool polarity) override;
  std::uint64_t count_models_restricted(const Circuit& c, const Restriction& rho,
                                        bool polarity) override;

 private:
  struct RunResult {
    int exit_code = -1;
    std::string output;
  };
  RunResult run_on_cnf(const std::string& cmd_template, const Cnf& cnf);
  std::uint64_t count_cnf(const Cnf& cnf);

  SolverConfig cfg_;
  std::mutex mu_;  // one subprocess at a time per backend instance
  std::uint64_t file_counter_ = 0;
};

}  // namespace bfcert
