#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <vector>

#include "hras/domain.hpp"
#include "hras/model_saa.hpp"
#include "hras/model_wasserstein.hpp"
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

TEST_CASE("the penalized supremum follows the single free coordinate") {
  // everything deterministic except the return leg, whose box is [20, 25]
  Instance inst = box_instance(1, 0.5, 30.0, 30.0, 20.0, 20.0);
  inst.travelUpper[1][0] = 25.0;
  const Scenario sample = flat_scenario(1, {30.0}, 20.0);
  const FirstStageDecision dec = decision_from_route({1}, {20.0});

  const double base = evaluate_recourse(dec, sample, inst).cost;
  CHECK(base == doctest::Approx(20.0));  // pure travel at lambda = 0.5

  // return-leg weight is lambda; candidates at rho: {10, 10, 12.5 - 5 rho}
  CHECK(g_r_value(0.0, dec, sample, inst) == doctest::Approx(base + 2.5));
  CHECK(g_r_value(0.3, dec, sample, inst) == doctest::Approx(base + 1.0));
  CHECK(g_r_value(0.6, dec, sample, inst) == doctest::Approx(base));
  CHECK(g_r_value(100.0, dec, sample, inst) == doctest::Approx(base));
}

TEST_CASE("a large multiplier collapses the supremum to the sample cost") {
  GenConfig cfg;
  cfg.N = 3;
  cfg.seed = 5;
  const GeneratedInstance gi = gen_instance(cfg);
  const std::vector<Scenario> sc = gen_scenarios(gi.inst, gi.latentMu, 1, cfg);
  const FirstStageDecision dec = decision_from_route({3, 1, 2}, {40.0, 110.0, 180.0});
  const double f = evaluate_recourse(dec, sc[0], gi.inst).cost;
  CHECK(g_r_value(1e7, dec, sc[0], gi.inst) == doctest::Approx(f).epsilon(1e-9));
}

TEST_CASE("an unpenalized supremum equals the support-box worst case") {
  const Instance inst = box_instance(2, 0.5);
  const Scenario sample = flat_scenario(2, {30.0, 30.0}, 20.0);
  const FirstStageDecision dec = decision_from_route({1, 2}, {25.0, 80.0});

  // f is convex in the uncertainty, so the box maximum sits at a vertex of
  // the five legs/services the route actually uses
  double worst = -1e300;
  for (int mask = 0; mask < 32; ++mask) {
    Scenario v = sample;
    auto pick = [&](int bit, double lo, double hi) { return (mask >> bit) & 1 ? hi : lo; };
    v.service[0] = pick(0, 20.0, 40.0);
    v.service[1] = pick(1, 20.0, 40.0);
    v.travel[0][1] = pick(2, 15.0, 25.0);
    v.travel[1][2] = pick(3, 15.0, 25.0);
    v.travel[2][0] = pick(4, 15.0, 25.0);
    worst = std::max(worst, evaluate_recourse(dec, v, inst).cost);
  }
  CHECK(g_r_value(0.0, dec, sample, inst) == doctest::Approx(worst).epsilon(1e-9));
}

TEST_CASE("fixed-decision model and line-search oracle agree") {
  const Instance inst = box_instance(2, 0.5);
  WassersteinAmbiguity amb;
  amb.samples = {flat_scenario(2, {25.0, 35.0}, 18.0), flat_scenario(2, {32.0, 24.0}, 22.0)};
  amb.radius = 2.0;
  const FirstStageDecision dec = decision_from_route({2, 1}, {20.0, 75.0});

  const double milp = wdhras_worstcase(dec, inst, amb, exact());
  const double oracle = wasserstein_oracle(dec, inst, amb);
  CHECK(milp == doctest::Approx(oracle).epsilon(1e-4));
}

TEST_CASE("a zero radius reduces the oracle to the sample average") {
  const Instance inst = box_instance(2, 0.5);
  WassersteinAmbiguity amb;
  amb.samples = {flat_scenario(2, {25.0, 35.0}, 18.0), flat_scenario(2, {32.0, 24.0}, 22.0)};
  amb.radius = 0.0;
  const FirstStageDecision dec = decision_from_route({1, 2}, {30.0, 90.0});

  double mean = 0.0;
  for (const Scenario& sc : amb.samples) mean += evaluate_recourse(dec, sc, inst).cost;
  mean /= static_cast<double>(amb.samples.size());
  CHECK(wasserstein_oracle(dec, inst, amb) == doctest::Approx(mean).epsilon(1e-6));
}

TEST_CASE("a zero radius reduces the optimized model to the sample average fit") {
  const Instance inst = box_instance(2, 0.5);
  const std::vector<Scenario> samples = {flat_scenario(2, {25.0, 35.0}, 18.0),
                                         flat_scenario(2, {32.0, 24.0}, 22.0)};
  WassersteinAmbiguity amb{samples, 0.0};

  WdhrasModel wm = build_wdhras(inst, amb);
  const SolveResult rw = solve(wm.model, exact());
  REQUIRE(rw.status == SolveStatus::Optimal);

  const SaaModelSpec spec{&inst, samples, false};
  SaaModel sm = build_saa(spec);
  const SolveResult rs = solve(sm.model, exact());
  REQUIRE(rs.status == SolveStatus::Optimal);

  CHECK(rw.objective == doctest::Approx(rs.objective).epsilon(1e-6));
}

TEST_CASE("the worst case grows with the radius") {
  const Instance inst = box_instance(2, 0.5);
  const FirstStageDecision dec = decision_from_route({1, 2}, {25.0, 85.0});
  std::vector<Scenario> samples = {flat_scenario(2, {25.0, 35.0}, 18.0)};

  double prev = -1e300;
  for (const double eps : {0.0, 0.5, 5.0, 50.0}) {
    WassersteinAmbiguity amb{samples, eps};
    const double v = wdhras_worstcase(dec, inst, amb, exact());
    CHECK(v >= prev - 1e-7);
    prev = v;
  }
}

TEST_CASE("bad ambiguity descriptions are rejected") {
  const Instance inst = box_instance(2, 0.5);
  WassersteinAmbiguity empty;
  CHECK_THROWS_AS(build_wdhras(inst, empty), std::invalid_argument);

  WassersteinAmbiguity negative{{flat_scenario(2, {30.0, 30.0}, 20.0)}, -1.0};
  CHECK_THROWS_AS(build_wdhras(inst, negative), std::invalid_argument);

  WassersteinAmbiguity outside{{flat_scenario(2, {55.0, 30.0}, 20.0)}, 1.0};
  CHECK_THROWS_AS(build_wdhras(inst, outside), std::invalid_argument);
}

TEST_CASE("the multiplier cap covers the largest dual slope") {
  CHECK(rho_upper_bound(CostStructure::uniform(2, 2.0, 1.0, 20.0, 0.5), 2) ==
        doctest::Approx(24.5));
}
