#include "bfcert/circuit_io.hpp"

#include <cctype>
#include <fstream>
#include <optional>
#include <sstream>
#include <unordered_map>

namespace bfcert {

namespace {

bool is_input_token(const std::string& tok) {
  if (tok.size() < 2 || tok[0] != 'x') return false;
  for (std::size_t k = 1; k < tok.size(); ++k)
    if (!std::isdigit(static_cast<unsigned char>(tok[k]))) return false;
  return true;
}

std::optional<Op> op_from_name(const std::string& s) {
  if (s == "AND") return Op::And;
  if (s == "OR") return Op::Or;
  if (s == "NOT") return Op::Not;
  if (s == "XOR") return Op::Xor;
  if (s == "CONST0") return Op::Const0;
  if (s == "CONST1") return Op::Const1;
  return std::nullopt;
}

std::vector<std::string> tokenize(const std::string& line) {
  std::string no_comment = line.substr(0, line.find('#'));
  std::istringstream is(no_comment);
  std::vector<std::string> toks;
  std::string t;
  while (is >> t) toks.push_back(t);
  return toks;
}

int parse_count(const std::string& tok, int line, const char* what) {
  try {
    std::size_t used = 0;
    int v = std::stoi(tok, &used);
    if (used != tok.size()) throw std::invalid_argument("");
    return v;
  } catch (...) {
    throw ParseError(line, std::string("expected a number for ") + what + ", got '" + tok + "'");
  }
}

}  // namespace

Circuit parse_circuit(const std::string& text) {
  // Pre-scan gate definition lines so a reference to a gate defined further
  // down can be reported as a cycle rather than an unknown name.
  std::unordered_map<std::string, int> def_line;
  {
    std::istringstream in(text);
    std::string raw;
    int lineno = 0;
    while (std::getline(in, raw)) {
      ++lineno;
      auto toks = tokenize(raw);
      if (toks.size() >= 2 && toks[0] == "gate" && !def_line.count(toks[1]))
        def_line[toks[1]] = lineno;
    }
  }

  std::istringstream in(text);
  std::string raw;
  int lineno = 0;

  int n = -1;
  int inputs_line = 0;
  std::vector<Gate> gates;
  std::unordered_map<std::string, int> gate_index;  // ids already built
  std::optional<Ref> output;

  auto resolve = [&](const std::string& tok, int line) -> Ref {
    if (is_input_token(tok)) {
      int i = parse_count(tok.substr(1), line, "input index");
      if (i < 1 || i > n)
        throw ParseError(line, "input " + tok + " out of range (circuit has " + std::to_string(n) +
                                   " inputs)");
      return Ref::input(i);
    }
    auto it = gate_index.find(tok);
    if (it == gate_index.end()) {
      if (def_line.count(tok))
        throw ParseError(line, "cyclic reference through gate '" + tok + "'");
      throw ParseError(line, "unknown gate '" + tok + "'");
    }
    return Ref::gate(it->second);
  };

  while (std::getline(in, raw)) {
    ++lineno;
    auto toks = tokenize(raw);
    if (toks.empty()) continue;

    if (output.has_value()) throw ParseError(lineno, "nothing may follow the output line");

    if (toks[0] == "inputs") {
      if (n >= 0) throw ParseError(lineno, "duplicate inputs line (first at line " +
                                               std::to_string(inputs_line) + ")");
      if (toks.size() != 2) throw ParseError(lineno, "usage: inputs <n>");
      n = parse_count(toks[1], lineno, "input count");
      if (n < 1) throw ParseError(lineno, "input count must be at least 1");
      inputs_line = lineno;
      continue;
    }
    if (n < 0) throw ParseError(lineno, "the inputs line must come first");

    if (toks[0] == "gate") {
      if (toks.size() < 3) throw ParseError(lineno, "usage: gate <id> <OP> <arg...>");
      const std::string& id = toks[1];
      if (is_input_token(id))
        throw ParseError(lineno, "gate id '" + id + "' collides with input naming");
      if (gate_index.count(id)) throw ParseError(lineno, "duplicate gate id '" + id + "'");
      auto op = op_from_name(toks[2]);
      if (!op) throw ParseError(lineno, "unknown operation '" + toks[2] + "'");

      Gate g;
      g.op = *op;
      for (std::size_t k = 3; k < toks.size(); ++k) g.args.push_back(resolve(toks[k], lineno));

      const auto arity = g.args.size();
      switch (g.op) {
        case Op::Const0:
        case Op::Const1:
          if (arity != 0) throw ParseError(lineno, "constants take no operands");
          break;
        case Op::Not:
          if (arity != 1) throw ParseError(lineno, "NOT takes exactly one operand");
          break;
        default:
          if (arity < 1) throw ParseError(lineno, std::string(op_name(g.op)) +
                                                      " needs at least one operand");
      }
      gate_index[id] = static_cast<int>(gates.size());
      gates.push_back(std::move(g));
      continue;
    }

    if (toks[0] == "output") {
      if (toks.size() != 2) throw ParseError(lineno, "usage: output <id|x<k>>");
      output = resolve(toks[1], lineno);
      continue;
    }

    throw ParseError(lineno, "unknown directive '" + toks[0] + "'");
  }

  if (n < 0) throw ParseError(lineno, "missing inputs line");
  if (!output.has_value()) throw ParseError(lineno, "missing output line");
  try {
    return Circuit(n, std::move(gates), *output);
  } catch (const CircuitError& e) {
    throw ParseError(lineno, e.what());
  }
}

std::string serialize_circuit(const Circuit& c) {
  std::ostringstream os;
  os << "inputs " << c.num_inputs() << "\n";
  auto ref_str = [](Ref r) {
    return r.is_input() ? "x" + std::to_string(r.input_index())
                        : "g" + std::to_string(r.gate_index() + 1);
  };
  for (std::size_t g = 0; g < c.gates().size(); ++g) {
    const Gate& gate = c.gates()[g];
    os << "gate g" << (g + 1) << " " << op_name(gate.op);
    for (Ref a : gate.args) os << " " << ref_str(a);
    os << "\n";
  }
  os << "output " << ref_str(c.output()) << "\n";
  return os.str();
}

Circuit read_circuit_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw CircuitError("cannot open circuit file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_circuit(buf.str());
}

void write_circuit_file(const std::string& path, const Circuit& c) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write circuit file: " + path);
  out << serialize_circuit(c);
}

}  // namespace bfcert
