#pragma once

#include <filesystem>
#include <fstream>
#include <string>
#include <unistd.h>

namespace bfcert::test {

// A miniature DPLL solver and model counter, written out as python scripts so
// the subprocess plumbing gets exercised end to end. Unit propagation keeps
// the search over input variables only; the encoding pins everything else.
inline const char* kDpllCommon = R"PY(
import sys

def parse(path):
    nv = 0
    clauses = []
    with open(path) as fh:
        for line in fh:
            line = line.strip()
            if not line or line[0] == 'c':
                continue
            if line[0] == 'p':
                nv = int(line.split()[2])
                continue
            lits = [int(t) for t in line.split()]
            if lits and lits[-1] == 0:
                lits.pop()
            clauses.append(lits)
    return nv, clauses

def propagate(clauses, a):
    changed = True
    while changed:
        changed = False
        for cl in clauses:
            sat = False
            free = []
            for lit in cl:
                v = a.get(abs(lit))
                if v is None:
                    free.append(lit)
                elif (lit > 0) == v:
                    sat = True
                    break
            if sat:
                continue
            if not free:
                return None
            if len(free) == 1:
                a[abs(free[0])] = free[0] > 0
                changed = True
    return a
)PY";

inline const char* kSolveTail = R"PY(
def solve(nv, clauses, a):
    a = propagate(clauses, dict(a))
    if a is None:
        return None
    for v in range(1, nv + 1):
        if v not in a:
            for bit in (False, True):
                b = dict(a)
                b[v] = bit
                m = solve(nv, clauses, b)
                if m is not None:
                    return m
            return None
    return a

nv, clauses = parse(sys.argv[-1])
m = solve(nv, clauses, {})
if m is None:
    print("s UNSATISFIABLE")
else:
    print("s SATISFIABLE")
    print("v " + " ".join(str(v if m[v] else -v) for v in range(1, nv + 1)) + " 0")
)PY";

inline const char* kCountTail = R"PY(
def count(nv, clauses, a):
    a = propagate(clauses, dict(a))
    if a is None:
        return 0
    for v in range(1, nv + 1):
        if v not in a:
            lo = dict(a)
            lo[v] = False
            hi = dict(a)
            hi[v] = True
            return count(nv, clauses, lo) + count(nv, clauses, hi)
    return 1

nv, clauses = parse(sys.argv[-1])
total = count(nv, clauses, {})
if len(sys.argv) > 2 and sys.argv[1] == 'arb':
    print("c s exact arb int %d" % total)
else:
    print("s mc %d" % total)
)PY";

struct FakeSolvers {
  std::filesystem::path dir;
  std::string solve_cmd, count_cmd, count_arb_cmd, sleep_cmd, noise_cmd, liar_cmd;

  FakeSolvers() {
    dir = std::filesystem::temp_directory_path() /
          ("bfcert-fakes-" + std::to_string(getpid()));
    std::filesystem::create_directories(dir);
    write("dpll.py", std::string(kDpllCommon) + kSolveTail);
    write("count.py", std::string(kDpllCommon) + kCountTail);
    write("sleep.py", "import time\ntime.sleep(5)\nprint('s SATISFIABLE')\n");
    write("noise.py", "print('hello from a confused process')\n");
    write("liar.py",
          "import sys\n" + std::string(kDpllCommon) +
              "nv, clauses = parse(sys.argv[-1])\n"
              "print('s SATISFIABLE')\n"
              "print('v ' + ' '.join(str(-v) for v in range(1, nv + 1)) + ' 0')\n");
    const std::string base = "python3 '" + dir.string() + "/";
    solve_cmd = base + "dpll.py' {cnf}";
    count_cmd = base + "count.py'";  // no placeholder: path gets appended
    count_arb_cmd = base + "count.py' arb {cnf}";
    sleep_cmd = base + "sleep.py' {cnf}";
    noise_cmd = base + "noise.py' {cnf}";
    liar_cmd = base + "liar.py' {cnf}";
  }

  void write(const std::string& name, const std::string& body) {
    std::ofstream out(dir / name);
    out << body;
  }
};

inline FakeSolvers& fakes() {
  static FakeSolvers f;
  return f;
}

}  // namespace bfcert::test
