#include "doctest.h"

#include "bfcert/sampler.hpp"
#include "bfcert/solver.hpp"
#include "support/corpus.hpp"
#include "support/fake_solver.hpp"

using namespace bfcert;
using test::fakes;
using test::random_circuit;

TEST_CASE("external backend agrees with the exhaustive one") {
  ExternalSolverBackend sb({fakes().solve_cmd, fakes().count_cmd, 30});
  ExhaustiveBackend ex;
  CHECK(sb.name() == "solver");
  CHECK(sb.can_count());

  std::mt19937_64 rng(71);
  for (int trial = 0; trial < 10; ++trial) {
    const int n = 2 + static_cast<int>(rng() % 4);
    const Circuit c = random_circuit(rng, n, 10);
    for (bool polarity : {false, true}) {
      const SatResult got = sb.find_model(c, polarity);
      const SatResult want = ex.find_model(c, polarity);
      REQUIRE(got.status == want.status);
      if (got.status == SatStatus::Sat) CHECK(evaluate(c, *got.model) == polarity);
      CHECK(sb.count_models(c, polarity) == ex.count_models(c, polarity));
    }
    Restriction rho;
    rho.set(1 + static_cast<int>(rng() % n), rng() % 2 == 0);
    CHECK(sb.count_models_restricted(c, rho, true) == ex.count_models_restricted(c, rho, true));
  }
}

TEST_CASE("external backend frozen answers") {
  ExternalSolverBackend sb({fakes().solve_cmd, fakes().count_arb_cmd, 30});
  const Circuit c = make_and(2);
  CHECK(sb.count_models(c, true) == 1);
  CHECK(sb.count_models(c, false) == 3);

  Restriction rho;
  rho.set(1, true);
  CHECK(sb.count_models_restricted(c, rho, true) == 1);
  CHECK(sb.count_models_restricted(c, rho, false) == 1);

  CHECK(sb.find_model(make_const(2, false), true).status == SatStatus::Unsat);
  const SatResult m = sb.find_model(c, true);
  REQUIRE(m.status == SatStatus::Sat);
  CHECK(*m.model == parse_bits("11"));
}

TEST_CASE("sampler draws are identical across backends") {
  // The drawing stream depends only on the seed and the (exact) counts, so an
  // external counter and the exhaustive sweep must produce the same samples.
  ExternalSolverBackend sb({fakes().solve_cmd, fakes().count_cmd, 30});
  ExhaustiveBackend ex;
  const Circuit c = make_xor(3);

  UniformSampler a(ex, c, 977);
  UniformSampler b(sb, c, 977);
  for (int k = 0; k < 4; ++k) {
    const SampleOutcome oa = a.sample_satisfying();
    const SampleOutcome ob = b.sample_satisfying();
    REQUIRE(oa.x.has_value());
    REQUIRE(ob.x.has_value());
    CHECK(*oa.x == *ob.x);
  }
  UniformSampler ba(ex, c, 31);
  UniformSampler bb(sb, c, 31);
  for (int k = 0; k < 3; ++k) {
    const SampleOutcome oa = ba.sample_balanced();
    const SampleOutcome ob = bb.sample_balanced();
    REQUIRE(oa.x.has_value());
    REQUIRE(ob.x.has_value());
    CHECK(*oa.x == *ob.x);
    CHECK(*oa.value == *ob.value);
  }
}

TEST_CASE("solver timeout maps to unknown") {
  ExternalSolverBackend sb({fakes().sleep_cmd, "", 1});
  const SatResult r = sb.find_model(make_and(2), true);
  CHECK(r.status == SatStatus::Unknown);
  CHECK(r.reason == "solver timeout");
}

TEST_CASE("garbage output maps to unknown") {
  ExternalSolverBackend sb({fakes().noise_cmd, fakes().noise_cmd, 30});
  const SatResult r = sb.find_model(make_and(2), true);
  CHECK(r.status == SatStatus::Unknown);
  CHECK(r.reason == "unrecognized solver output");
  CHECK_THROWS_AS(sb.count_models(make_and(2), true), OracleUnknown);
}

TEST_CASE("a lying solver is caught by revalidation") {
  ExternalSolverBackend sb({fakes().liar_cmd, "", 30});
  const SatResult r = sb.find_model(make_and(2), true);
  CHECK(r.status == SatStatus::Unknown);
  CHECK(r.reason == "solver model failed validation");
}

TEST_CASE("counting without a counter command") {
  ExternalSolverBackend sb({fakes().solve_cmd, "", 30});
  CHECK_FALSE(sb.can_count());
  CHECK_THROWS_WITH_AS(sb.count_models(make_and(2), true), "no counting command configured",
                       OracleUnknown);
  // The sampler surfaces that as an unknown outcome rather than a throw.
  const SampleOutcome out = sample_satisfying(sb, make_and(2), {5});
  CHECK(out.unknown);
  CHECK_FALSE(out.x.has_value());
}

TEST_CASE("solver config validation") {
  CHECK_THROWS_AS(ExternalSolverBackend({"", "", 30}), std::invalid_argument);
}
