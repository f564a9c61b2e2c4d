#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <vector>

#include "hras/domain.hpp"
#include "hras/model_moment.hpp"
#include "hras/recourse.hpp"
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

MomentAmbiguity centered_ambiguity(const Instance& inst) {
  MomentAmbiguity amb;
  const int N = inst.N;
  amb.serviceMean.resize(static_cast<size_t>(N));
  for (int i = 0; i < N; ++i)
    amb.serviceMean[static_cast<size_t>(i)] =
        0.5 * (inst.serviceLower[static_cast<size_t>(i)] + inst.serviceUpper[static_cast<size_t>(i)]);
  amb.travelMean.assign(static_cast<size_t>(N + 1), dvec(static_cast<size_t>(N + 1), 0.0));
  for (int i = 0; i <= N; ++i)
    for (int ip = 0; ip <= N; ++ip)
      amb.travelMean[static_cast<size_t>(i)][static_cast<size_t>(ip)] =
          0.5 * (inst.travelLower[static_cast<size_t>(i)][static_cast<size_t>(ip)] +
                 inst.travelUpper[static_cast<size_t>(i)][static_cast<size_t>(ip)]);
  return amb;
}

SolveOptions exact() {
  SolveOptions o;
  o.gap = 0.0;
  return o;
}

}  // namespace

TEST_CASE("dual bound constants freeze the pi extremes") {
  const TightBounds b = tight_bounds(CostStructure::uniform(2, 2.0, 1.0, 20.0, 2.0), 2);
  CHECK(b.P1upper == doctest::Approx(22.0));
  CHECK(b.P1lower == doctest::Approx(-1.0));
  CHECK(b.P2upper == doctest::Approx(24.0));
  CHECK(b.P2lower == doctest::Approx(-1.0));
  CHECK(b.lambda == doctest::Approx(2.0));
  CHECK(b.rhoLo() == doctest::Approx(-1.0));
  CHECK(b.rhoHi() == doctest::Approx(22.0));
  CHECK(b.alphaMidLo() == doctest::Approx(-3.0));
  CHECK(b.alphaMidHi() == doctest::Approx(24.0));
  CHECK(b.alphaOutLo() == doctest::Approx(-3.0));
  CHECK(b.alphaOutHi() == doctest::Approx(26.0));
  CHECK(b.deltaHi(20.0) == doctest::Approx(21.0));
  CHECK(b.gammaMidHi(20.0) == doctest::Approx(25.0));
  CHECK(b.gammaOutHi(24.0) == doctest::Approx(29.0));
}

TEST_CASE("fixed-route worst case matches vertex-partition enumeration") {
  SUBCASE("two customers") {
    const Instance inst = box_instance(2, 0.5);
    const MomentAmbiguity amb = centered_ambiguity(inst);
    const FirstStageDecision dec = decision_from_route({2, 1}, {20.0, 80.0});
    const double milp = mdhras_worstcase(dec, inst, amb, exact());
    const double oracle = moment_worstcase_oracle(dec, inst, amb, exact());
    CHECK(milp == doctest::Approx(oracle).epsilon(1e-5));
  }
  SUBCASE("three customers") {
    const Instance inst = box_instance(3, 2.0);
    const MomentAmbiguity amb = centered_ambiguity(inst);
    const FirstStageDecision dec = decision_from_route({3, 1, 2}, {30.0, 100.0, 170.0});
    const double milp = mdhras_worstcase(dec, inst, amb, exact());
    const double oracle = moment_worstcase_oracle(dec, inst, amb, exact());
    CHECK(milp == doctest::Approx(oracle).epsilon(1e-5));
  }
}

TEST_CASE("doubling every big-M constant leaves the optimum unchanged") {
  const Instance inst = box_instance(2, 0.5);
  const MomentAmbiguity amb = centered_ambiguity(inst);

  MdhrasOptions base;
  MdhrasModel m1 = build_mdhras(inst, amb, base);
  const SolveResult r1 = solve(m1.model, exact());
  REQUIRE(r1.status == SolveStatus::Optimal);

  MdhrasOptions wide;
  wide.bigMScale = 2.0;
  MdhrasModel m2 = build_mdhras(inst, amb, wide);
  const SolveResult r2 = solve(m2.model, exact());
  REQUIRE(r2.status == SolveStatus::Optimal);

  CHECK(r1.objective == doctest::Approx(r2.objective).epsilon(1e-6));
}

TEST_CASE("means on or outside the box boundary are rejected") {
  const Instance inst = box_instance(2, 0.5);
  MomentAmbiguity amb = centered_ambiguity(inst);
  amb.serviceMean[0] = 40.0;  // exactly the upper edge
  CHECK_THROWS_AS(build_mdhras(inst, amb), std::invalid_argument);
  amb.serviceMean[0] = 45.0;  // beyond it
  CHECK_THROWS_AS(build_mdhras(inst, amb), std::invalid_argument);
  amb.serviceMean[0] = 30.0;
  amb.travelMean[0][1] = 15.0;  // lower edge of a nondegenerate travel box
  CHECK_THROWS_AS(build_mdhras(inst, amb), std::invalid_argument);
}

TEST_CASE("a degenerate box collapses the worst case to its single scenario") {
  Instance inst = box_instance(2, 0.5, 30.0, 30.0, 20.0, 20.0);
  inst.serviceLower = {30.0, 20.0};
  inst.serviceUpper = {30.0, 20.0};
  MomentAmbiguity amb;
  amb.serviceMean = {30.0, 20.0};
  amb.travelMean = inst.travelLower;

  Scenario sc;
  sc.service = {30.0, 20.0};
  sc.travel = inst.travelLower;

  const FirstStageDecision dec = decision_from_route({1, 2}, {10.0, 50.0});
  const double point = evaluate_recourse(dec, sc, inst).cost;
  const double worst = mdhras_worstcase(dec, inst, amb, exact());
  CHECK(worst == doctest::Approx(point).epsilon(1e-6));
}

TEST_CASE("sample means are nudged strictly inside the box") {
  const Instance inst = box_instance(2, 0.5);
  Scenario lo;  // every coordinate at the lower corner
  lo.service = inst.serviceLower;
  lo.travel = inst.travelLower;
  const MomentAmbiguity amb = ambiguity_from_samples(inst, {lo});
  for (int i = 0; i < 2; ++i) {
    CHECK(amb.serviceMean[static_cast<size_t>(i)] > inst.serviceLower[static_cast<size_t>(i)]);
    CHECK(amb.serviceMean[static_cast<size_t>(i)] < inst.serviceUpper[static_cast<size_t>(i)]);
  }
  for (int i = 0; i <= 2; ++i)
    for (int ip = 0; ip <= 2; ++ip) {
      if (i == ip) continue;
      CHECK(amb.travelMean[static_cast<size_t>(i)][static_cast<size_t>(ip)] >
            inst.travelLower[static_cast<size_t>(i)][static_cast<size_t>(ip)]);
      CHECK(amb.travelMean[static_cast<size_t>(i)][static_cast<size_t>(ip)] <
            inst.travelUpper[static_cast<size_t>(i)][static_cast<size_t>(ip)]);
    }
  CHECK_NOTHROW(build_mdhras(inst, amb));
}
