#pragma once

#include <cstdint>
#include <deque>
#include <memory>
#include <mutex>
#include <optional>
#include <stdexcept>
#include <string>
#include <unordered_map>

#include "bfcert/circuit.hpp"
#include "bfcert/sweep.hpp"

namespace bfcert {

enum class SatStatus { Sat, Unsat, Unknown };

struct SatResult {
  SatStatus status = SatStatus::Unknown;
  std::optional<Bits> model;  // present iff Sat, and evaluates to the queried polarity
  std::string reason;         // why the answer is Unknown

  static SatResult sat(Bits m) { return {SatStatus::Sat, std::move(m), {}}; }
  static SatResult unsat() { return {SatStatus::Unsat, std::nullopt, {}}; }
  static SatResult unknown(std::string why) { return {SatStatus::Unknown, std::nullopt, std::move(why)}; }
};

// Raised when a query has no trustworthy answer (cap exceeded, solver
// timeout, counting unavailable). Callers either surface it or map it to an
// Unknown status; it is never converted into a guessed value.
class OracleUnknown : public std::runtime_error {
 public:
  explicit OracleUnknown(const std::string& why) : std::runtime_error(why) {}
};

class OracleBackend {
 public:
  virtual ~OracleBackend() = default;
  virtual std::string name() const = 0;
  virtual bool can_count() const = 0;

  // A model x with f(x) = polarity, or Unsat / Unknown.
  virtual SatResult find_model(const Circuit& c, bool polarity) = 0;

  // Exact |{x : f(x) = polarity}|. Throws OracleUnknown when unavailable.
  virtual std::uint64_t count_models(const Circuit& c, bool polarity) = 0;

  // Self-reducibility hook for the uniform sampler: models consistent with a
  // partial assignment. The default restricts the circuit and counts;
  // backends with cheap enumeration override it.
  virtual std::uint64_t count_models_restricted(const Circuit& c, const Restriction& rho,
                                                bool polarity);

  // Full truth table when this backend can enumerate cheaply, else nullptr.
  // Purely an accelerator: everything it serves is also answerable through
  // the query interface above.
  virtual std::shared_ptr<const TruthTable> full_table(const Circuit&) { return nullptr; }
};

// Answers every query by sweeping all 2^n inputs. Exact and deterministic;
// refuses (Unknown) past max_inputs rather than grinding forever.
class ExhaustiveBackend final : public OracleBackend {
 public:
  explicit ExhaustiveBackend(int max_inputs = 24);

  std::string name() const override { return "exhaustive"; }
  bool can_count() const override { return true; }
  SatResult find_model(const Circuit& c, bool polarity) override;
  std::uint64_t count_models(const Circuit& c, bool polarity) override;
  std::uint64_t count_models_restricted(const Circuit& c, const Restriction& rho,
                                        bool polarity) override;
  std::shared_ptr<const TruthTable> full_table(const Circuit& c) override;

  int max_inputs() const { return max_inputs_; }

 private:
  int max_inputs_;
  // Tables are memoized by circuit identity so repeated queries against the
  // same circuit (the sampler's bread and butter) cost one sweep total.
  std::mutex mu_;
  std::unordered_map<std::uint64_t, std::shared_ptr<const TruthTable>> cache_;
  std::deque<std::uint64_t> cache_order_;
};

struct ConstancyResult {
  bool constant = false;
  bool value = false;  // meaningful iff constant
  Bits witness0, witness1;  // meaningful iff !constant: f(witness0)=0, f(witness1)=1
};

ConstancyResult is_constant(OracleBackend& b, const Circuit& c);

struct VerifyResult {
  bool valid = false;
  Bits counterexample;  // iff !valid: agrees with the anchor on the indices, flips f
};

// Valid iff fixing the anchor's bits on cert.indices pins f to f(anchor).
VerifyResult verify_certificate(OracleBackend& b, const Circuit& c, const Certificate& cert);

}  // namespace bfcert
