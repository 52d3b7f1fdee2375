#include "bfcert/oracle.hpp"

#include <algorithm>

namespace bfcert {

std::uint64_t OracleBackend::count_models_restricted(const Circuit& c, const Restriction& rho,
                                                     bool polarity) {
  const std::uint64_t free_count = count_models(restrict_circuit(c, rho), polarity);
  // restrict_circuit keeps the full input space, so every model of the
  // restricted circuit that disagrees with rho on an assigned coordinate is
  // a duplicate of the one that agrees. Divide those out.
  return free_count >> rho.size();
}

ExhaustiveBackend::ExhaustiveBackend(int max_inputs) : max_inputs_(max_inputs) {
  if (max_inputs_ < 1 || max_inputs_ > kMaxSweepInputs)
    throw CircuitError("exhaustive cap must be within 1.." + std::to_string(kMaxSweepInputs));
}

std::shared_ptr<const TruthTable> ExhaustiveBackend::full_table(const Circuit& c) {
  if (c.num_inputs() > max_inputs_) return nullptr;
  constexpr int kCacheableInputs = 20;  // past this a table is megabytes; rebuild instead
  constexpr std::size_t kCacheSlots = 64;
  if (c.num_inputs() > kCacheableInputs)
    return std::make_shared<const TruthTable>(build_table(c));
  {
    std::lock_guard lk(mu_);
    auto it = cache_.find(c.uid());
    if (it != cache_.end()) return it->second;
  }
  auto table = std::make_shared<const TruthTable>(build_table(c));
  std::lock_guard lk(mu_);
  if (cache_.emplace(c.uid(), table).second) {
    cache_order_.push_back(c.uid());
    if (cache_order_.size() > kCacheSlots) {
      cache_.erase(cache_order_.front());
      cache_order_.pop_front();
    }
  }
  return table;
}

SatResult ExhaustiveBackend::find_model(const Circuit& c, bool polarity) {
  if (c.num_inputs() > max_inputs_)
    return SatResult::unknown("circuit has " + std::to_string(c.num_inputs()) +
                              " inputs, exhaustive cap is " + std::to_string(max_inputs_));
  auto t = full_table(c);
  auto x = first_value_restricted(*t, Restriction{}, polarity);
  if (!x) return SatResult::unsat();
  return SatResult::sat(index_to_bits(*x, c.num_inputs()));
}

std::uint64_t ExhaustiveBackend::count_models(const Circuit& c, bool polarity) {
  if (c.num_inputs() > max_inputs_)
    throw OracleUnknown("circuit has " + std::to_string(c.num_inputs()) +
                        " inputs, exhaustive cap is " + std::to_string(max_inputs_));
  return count_value(*full_table(c), polarity);
}

std::uint64_t ExhaustiveBackend::count_models_restricted(const Circuit& c, const Restriction& rho,
                                                         bool polarity) {
  if (c.num_inputs() > max_inputs_)
    throw OracleUnknown("circuit has " + std::to_string(c.num_inputs()) +
                        " inputs, exhaustive cap is " + std::to_string(max_inputs_));
  return count_value_restricted(*full_table(c), rho, polarity);
}

ConstancyResult is_constant(OracleBackend& b, const Circuit& c) {
  SatResult zero = b.find_model(c, false);
  if (zero.status == SatStatus::Unknown) throw OracleUnknown(zero.reason);
  if (zero.status == SatStatus::Unsat) return {true, true, {}, {}};
  SatResult one = b.find_model(c, true);
  if (one.status == SatStatus::Unknown) throw OracleUnknown(one.reason);
  if (one.status == SatStatus::Unsat) return {true, false, {}, {}};
  return {false, false, std::move(*zero.model), std::move(*one.model)};
}

VerifyResult verify_certificate(OracleBackend& b, const Circuit& c, const Certificate& cert) {
  const int n = c.num_inputs();
  if (static_cast<int>(cert.anchor.size()) != n)
    throw CircuitError("certificate anchor length does not match circuit inputs");
  Restriction rho;
  for (int i : cert.indices) {
    if (i < 1 || i > n)
      throw CircuitError("certificate index x" + std::to_string(i) + " out of range");
    if (!rho.assigns(i)) rho.set(i, cert.anchor[i - 1] != 0);
  }
  const bool v = evaluate(c, cert.anchor);
  SatResult flip = b.find_model(restrict_circuit(c, rho), !v);
  if (flip.status == SatStatus::Unknown) throw OracleUnknown(flip.reason);
  if (flip.status == SatStatus::Unsat) return {true, {}};

  // The restricted circuit ignores assigned coordinates, so rewriting them to
  // the anchor's bits keeps the value while landing inside the subcube.
  Bits y = std::move(*flip.model);
  for (const auto& [i, bit] : rho.assignment) y[i - 1] = bit ? 1 : 0;
  return {false, std::move(y)};
}

}  // namespace bfcert
