#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <vector>

#include "hras/domain.hpp"
#include "hras/model_saa.hpp"
#include "hras/recourse.hpp"
#include "hras/scenario_gen.hpp"
#include "hras/solve.hpp"

using namespace hras;

namespace {

Instance box_instance(int N, double lambda, double svcLo = 20.0, double svcHi = 40.0,
                      double trvLo = 15.0, double trvHi = 25.0) {
  Instance inst;
  inst.N = N;
  inst.L = 480.0;
  inst.costs = CostStructure::uniform(N, 2.0, 1.0, 20.0, lambda);
  inst.serviceLower.assign(static_cast<size_t>(N), svcLo);
  inst.serviceUpper.assign(static_cast<size_t>(N), svcHi);
  inst.travelLower.assign(static_cast<size_t>(N + 1), dvec(static_cast<size_t>(N + 1), trvLo));
  inst.travelUpper.assign(static_cast<size_t>(N + 1), dvec(static_cast<size_t>(N + 1), trvHi));
  for (int i = 0; i <= N; ++i) {
    inst.travelLower[static_cast<size_t>(i)][static_cast<size_t>(i)] = 0.0;
    inst.travelUpper[static_cast<size_t>(i)][static_cast<size_t>(i)] = 0.0;
  }
  return inst;
}

Scenario flat_scenario(int N, const dvec& service, double travel) {
  Scenario sc;
  sc.service = service;
  sc.travel.assign(static_cast<size_t>(N + 1), dvec(static_cast<size_t>(N + 1), travel));
  for (int i = 0; i <= N; ++i)
    sc.travel[static_cast<size_t>(i)][static_cast<size_t>(i)] = 0.0;
  return sc;
}

SolveOptions exact() {
  SolveOptions o;
  o.gap = 0.0;
  return o;
}

}  // namespace

TEST_CASE("one deterministic scenario with free travel schedules at zero cost") {
  const Instance inst = box_instance(2, 0.0);
  const SaaModelSpec spec{&inst, {flat_scenario(2, {30.0, 20.0}, 20.0)}, false};
  SaaModel saa = build_saa(spec);
  const SolveResult r = solve(saa.model, exact());
  REQUIRE(r.status == SolveStatus::Optimal);
  CHECK(r.objective == doctest::Approx(0.0).epsilon(1e-9));
}

TEST_CASE("a single customer pays exactly the deterministic travel bill") {
  Instance inst = box_instance(1, 1.0, 20.0, 40.0, 15.0, 40.0);
  Scenario sc = flat_scenario(1, {30.0}, 0.0);
  sc.travel[0][1] = 25.0;
  sc.travel[1][0] = 35.0;
  const SaaModelSpec spec{&inst, {sc}, false};
  SaaModel saa = build_saa(spec);
  const SolveResult r = solve(saa.model, exact());
  REQUIRE(r.status == SolveStatus::Optimal);
  CHECK(r.objective == doctest::Approx(60.0).epsilon(1e-9));
}

TEST_CASE("the assignment model agrees with route enumeration") {
  for (const std::uint64_t seed : {3ull, 7ull}) {
    GenConfig cfg;
    cfg.N = 3;
    cfg.seed = seed;
    const GeneratedInstance gi = gen_instance(cfg);
    const std::vector<Scenario> tr = gen_scenarios(gi.inst, gi.latentMu, 3, cfg);
    const SaaModelSpec spec{&gi.inst, tr, false};

    SaaModel saa = build_saa(spec);
    const SolveResult r = solve(saa.model, exact());
    REQUIRE(r.status == SolveStatus::Optimal);
    const double brute = brute_force_saa(spec, exact());
    CHECK(r.objective == doctest::Approx(brute).epsilon(1e-6));
  }
}

TEST_CASE("the recovered first stage reproduces the objective in sample") {
  GenConfig cfg;
  cfg.N = 3;
  cfg.seed = 11;
  const GeneratedInstance gi = gen_instance(cfg);
  const std::vector<Scenario> tr = gen_scenarios(gi.inst, gi.latentMu, 4, cfg);
  const SaaModelSpec spec{&gi.inst, tr, false};

  SaaModel saa = build_saa(spec);
  const SolveResult r = solve(saa.model, exact());
  REQUIRE(r.status == SolveStatus::Optimal);
  const FirstStageDecision dec = extract_decision(saa.fs, r, 3);

  const std::vector<int> route = route_of(dec);  // throws unless a permutation
  CHECK(route.size() == 3);
  REQUIRE(dec.appointments.size() == 3);
  for (size_t j = 0; j + 1 < dec.appointments.size(); ++j)
    CHECK(dec.appointments[j] <= dec.appointments[j + 1] + 1e-9);
  CHECK(dec.appointments.front() >= -1e-9);
  CHECK(dec.appointments.back() <= gi.inst.L + 1e-9);

  double mean = 0.0;
  for (const Scenario& sc : tr) mean += evaluate_recourse(dec, sc, gi.inst).cost;
  mean /= static_cast<double>(tr.size());
  CHECK(mean == doctest::Approx(r.objective).epsilon(1e-6));
}

TEST_CASE("at least one scenario is required") {
  const Instance inst = box_instance(2, 0.5);
  const SaaModelSpec spec{&inst, {}, false};
  CHECK_THROWS_AS(build_saa(spec), std::invalid_argument);
}

TEST_CASE("scenarios outside the declared support are flagged") {
  const Instance inst = box_instance(2, 0.5);
  const SaaModelSpec spec{&inst, {flat_scenario(2, {50.0, 30.0}, 20.0)}, false};
  SaaModel saa = build_saa(spec);
  CHECK(!saa.warnings.empty());
  CHECK(!saa.model.vars().empty());
}
