#pragma once

#include <stdexcept>
#include <string>

#include "bfcert/circuit.hpp"

namespace bfcert {

class ParseError : public std::runtime_error {
 public:
  ParseError(int line, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}
  int line() const { return line_; }

 private:
  int line_;
};

// Text format, one directive per line, '#' starts a comment:
//
//   inputs <n>                  first directive
//   gate <id> <OP> <arg...>     OP in {AND, OR, NOT, XOR, CONST0, CONST1};
//                               args are x<k> or ids of earlier gates
//   output <id|x<k>>            last directive, exactly once
//
// Gate ids are free-form identifiers except the reserved x<k> shape.
Circuit parse_circuit(const std::string& text);

// Canonical form: gates renamed g1..gN in stored (topological) order.
// parse_circuit(serialize_circuit(c)) reconstructs c exactly.
std::string serialize_circuit(const Circuit& c);

Circuit read_circuit_file(const std::string& path);
void write_circuit_file(const std::string& path, const Circuit& c);

}  // namespace bfcert
