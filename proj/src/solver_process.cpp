#include "bfcert/solver.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <vector>

#ifdef _WIN32
#error "the external solver backend drives POSIX subprocesses"
#else
#include <sys/wait.h>
#include <unistd.h>
#endif

namespace bfcert {

namespace {

constexpr int kTimeoutExit = 124;  // what coreutils `timeout` exits with

std::string substitute_path(const std::string& cmd_template, const std::string& path) {
  const std::string quoted = "'" + path + "'";
  const auto pos = cmd_template.find("{cnf}");
  if (pos == std::string::npos) return cmd_template + " " + quoted;
  std::string cmd = cmd_template;
  cmd.replace(pos, 5, quoted);
  return cmd;
}

// First token after "s mc" (model counting track output) or after
// "c s exact arb int" (exact counters), as an unsigned 64-bit value.
std::optional<std::uint64_t> parse_count(const std::string& output) {
  std::istringstream lines(output);
  std::string line;
  while (std::getline(lines, line)) {
    std::istringstream toks(line);
    std::vector<std::string> t;
    std::string w;
    while (toks >> w) t.push_back(w);
    std::size_t at = std::string::npos;
    if (t.size() >= 3 && t[0] == "s" && t[1] == "mc") at = 2;
    if (t.size() >= 6 && t[0] == "c" && t[1] == "s" && t[2] == "exact" && t[3] == "arb" &&
        t[4] == "int")
      at = 5;
    if (at == std::string::npos) continue;
    try {
      std::size_t used = 0;
      const std::uint64_t value = std::stoull(t[at], &used);
      if (used == t[at].size()) return value;
    } catch (const std::exception&) {
      return std::nullopt;  // present but unparsable (overflow, junk): not a usable answer
    }
  }
  return std::nullopt;
}

}  // namespace

ExternalSolverBackend::ExternalSolverBackend(SolverConfig cfg) : cfg_(std::move(cfg)) {
  if (cfg_.solve_cmd.empty()) throw std::invalid_argument("solver command must be set");
}

ExternalSolverBackend::RunResult ExternalSolverBackend::run_on_cnf(const std::string& cmd_template,
                                                                   const Cnf& cnf) {
  namespace fs = std::filesystem;
  const fs::path path = fs::temp_directory_path() /
                        ("bfcert-" + std::to_string(getpid()) + "-" +
                         std::to_string(file_counter_++) + ".cnf");
  {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    out << to_dimacs(cnf);
  }

  std::string cmd = substitute_path(cmd_template, path.string());
  if (cfg_.timeout_sec > 0) cmd = "timeout " + std::to_string(cfg_.timeout_sec) + " " + cmd;
  cmd += " 2>/dev/null";

  RunResult result;
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) {
    std::error_code ec;
    fs::remove(path, ec);
    throw std::runtime_error("cannot launch solver subprocess");
  }
  char buf[4096];
  std::size_t got;
  while ((got = fread(buf, 1, sizeof buf, pipe)) > 0) result.output.append(buf, got);
  const int status = pclose(pipe);
  result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;

  std::error_code ec;
  fs::remove(path, ec);
  return result;
}

SatResult ExternalSolverBackend::find_model(const Circuit& c, bool polarity) {
  std::lock_guard<std::mutex> lock(mu_);
  const Cnf cnf = to_cnf(c, polarity);
  const RunResult run = run_on_cnf(cfg_.solve_cmd, cnf);

  bool saw_sat = false, saw_unsat = false;
  std::vector<int> lits;
  std::istringstream lines(run.output);
  std::string line;
  while (std::getline(lines, line)) {
    if (line.rfind("s ", 0) == 0) {
      if (line.find("UNSATISFIABLE") != std::string::npos) {
        saw_unsat = true;
      } else if (line.find("SATISFIABLE") != std::string::npos) {
        saw_sat = true;
      }
    } else if (line.rfind("v ", 0) == 0) {
      std::istringstream toks(line.substr(2));
      int lit;
      while (toks >> lit) {
        if (lit != 0) lits.push_back(lit);
      }
    }
  }

  if (saw_unsat) return SatResult::unsat();
  if (!saw_sat) {
    if (run.exit_code == kTimeoutExit) return SatResult::unknown("solver timeout");
    return SatResult::unknown("unrecognized solver output");
  }

  // Trust but verify: project the model onto the inputs and re-evaluate.
  std::vector<std::optional<bool>> assign(cnf.num_vars + 1);
  for (int lit : lits) {
    const int v = lit > 0 ? lit : -lit;
    if (v >= 1 && v <= cnf.num_vars) assign[v] = lit > 0;
  }
  Bits x(c.num_inputs(), 0);
  for (int i = 0; i < c.num_inputs(); ++i) {
    const auto& val = assign[cnf.input_var[i]];
    if (!val) return SatResult::unknown("solver model left an input unassigned");
    x[i] = *val ? 1 : 0;
  }
  if (evaluate(c, x) != polarity) return SatResult::unknown("solver model failed validation");
  return SatResult::sat(std::move(x));
}

std::uint64_t ExternalSolverBackend::count_cnf(const Cnf& cnf) {
  if (cfg_.count_cmd.empty()) throw OracleUnknown("no counting command configured");
  const RunResult run = run_on_cnf(cfg_.count_cmd, cnf);
  if (run.exit_code == kTimeoutExit) throw OracleUnknown("counter timeout");
  const auto count = parse_count(run.output);
  if (!count) throw OracleUnknown("unrecognized counter output");
  return *count;
}

std::uint64_t ExternalSolverBackend::count_models(const Circuit& c, bool polarity) {
  std::lock_guard<std::mutex> lock(mu_);
  // Tseitin auxiliaries are functions of the inputs, so CNF models are in
  // bijection with {x : f(x) = polarity} and the raw count is the answer.
  return count_cnf(to_cnf(c, polarity));
}

std::uint64_t ExternalSolverBackend::count_models_restricted(const Circuit& c,
                                                             const Restriction& rho,
                                                             bool polarity) {
  std::lock_guard<std::mutex> lock(mu_);
  Cnf cnf = to_cnf(c, polarity);
  for (const auto& [i, bit] : rho.assignment) {
    if (i < 1 || i > c.num_inputs()) throw std::invalid_argument("restriction index out of range");
    cnf.clauses.push_back({bit ? cnf.input_var[i - 1] : -cnf.input_var[i - 1]});
  }
  return count_cnf(cnf);
}

}  // namespace bfcert
