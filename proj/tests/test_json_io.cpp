#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <string>
#include <vector>

#include "hras/domain.hpp"
#include "hras/errors.hpp"
#include "hras/json_io.hpp"

using namespace hras;

namespace {

Instance sample_instance(bool withMeans) {
  Instance inst;
  inst.N = 2;
  inst.L = 480.0;
  inst.costs.waitCost = {2.0, 3.0};
  inst.costs.idleCost = {1.0, 1.5};
  inst.costs.overtimeCost = 20.0;
  inst.costs.travelCost = 0.5;
  inst.serviceLower = {20.0, 20.0};
  inst.serviceUpper = {40.0, 40.0};
  inst.travelLower.assign(3, dvec(3, 15.0));
  inst.travelUpper.assign(3, dvec(3, 25.0));
  for (int i = 0; i <= 2; ++i) {
    inst.travelLower[static_cast<size_t>(i)][static_cast<size_t>(i)] = 0.0;
    inst.travelUpper[static_cast<size_t>(i)][static_cast<size_t>(i)] = 0.0;
  }
  if (withMeans) {
    inst.serviceMean = dvec{30.0, 31.0};
    dmat tm(3, dvec(3, 20.0));
    for (int i = 0; i <= 2; ++i) tm[static_cast<size_t>(i)][static_cast<size_t>(i)] = 0.0;
    inst.travelMean = tm;
  }
  return inst;
}

std::vector<Scenario> sample_scenarios() {
  std::vector<Scenario> out(2);
  out[0].service = {30.25, 21.0};
  out[0].travel = {{0.0, 17.0, 18.0}, {19.0, 0.0, 20.0}, {21.0, 22.0, 0.0}};
  out[1].service = {39.5, 24.125};
  out[1].travel = {{0.0, 15.5, 16.5}, {17.5, 0.0, 18.5}, {19.5, 20.5, 0.0}};
  return out;
}

}  // namespace

TEST_CASE("instances survive the json round trip") {
  for (const bool withMeans : {false, true}) {
    const Instance inst = sample_instance(withMeans);
    const Instance back = instance_from_json(instance_to_json(inst));
    CHECK(back.N == inst.N);
    CHECK(back.L == inst.L);
    CHECK(back.costs.waitCost == inst.costs.waitCost);
    CHECK(back.costs.idleCost == inst.costs.idleCost);
    CHECK(back.costs.overtimeCost == inst.costs.overtimeCost);
    CHECK(back.costs.travelCost == inst.costs.travelCost);
    CHECK(back.serviceLower == inst.serviceLower);
    CHECK(back.serviceUpper == inst.serviceUpper);
    CHECK(back.travelLower == inst.travelLower);
    CHECK(back.travelUpper == inst.travelUpper);
    CHECK(back.serviceMean.has_value() == withMeans);
    CHECK(back.travelMean.has_value() == withMeans);
    if (withMeans) {
      CHECK(*back.serviceMean == *inst.serviceMean);
      CHECK(*back.travelMean == *inst.travelMean);
    }
    CHECK(validate_instance(back).empty());
  }
}

TEST_CASE("scenario sets survive the json round trip") {
  const auto sc = sample_scenarios();
  const auto back = scenarios_from_json(scenarios_to_json(sc));
  REQUIRE(back.size() == sc.size());
  for (size_t r = 0; r < sc.size(); ++r) {
    CHECK(back[r].service == sc[r].service);
    CHECK(back[r].travel == sc[r].travel);
  }
}

TEST_CASE("scenario sets survive the csv round trip bit for bit") {
  const auto sc = sample_scenarios();
  const std::string text = scenarios_to_csv(sc);
  CHECK(text.rfind("d_1,d_2,t_0_0", 0) == 0);
  const auto back = scenarios_from_csv(text, 2);
  REQUIRE(back.size() == sc.size());
  for (size_t r = 0; r < sc.size(); ++r) {
    CHECK(back[r].service == sc[r].service);
    CHECK(back[r].travel == sc[r].travel);
  }
}

TEST_CASE("decisions survive the json round trip") {
  const FirstStageDecision dec = decision_from_route({2, 1, 3}, {25.0, 90.0, 155.5});
  const FirstStageDecision back = decision_from_json(decision_to_json(dec));
  CHECK(back.assignment == dec.assignment);
  CHECK(back.appointments == dec.appointments);
  CHECK(route_of(back) == std::vector<int>{2, 1, 3});
}

TEST_CASE("solve summaries expose status and measures") {
  SolveResult r;
  r.status = SolveStatus::GapFeasible;
  r.objective = 123.5;
  r.gap = 0.015;
  r.nodes = 42;
  r.wallSeconds = 1.25;
  const nlohmann::json j = solve_result_to_json(r);
  CHECK(j.at("status").get<std::string>() == std::string(to_string(SolveStatus::GapFeasible)));
  CHECK(j.at("objective").get<double>() == doctest::Approx(123.5));
  CHECK(j.at("gap").get<double>() == doctest::Approx(0.015));
  CHECK(j.at("nodes").get<long>() == 42);
  CHECK(j.at("wallSeconds").get<double>() == doctest::Approx(1.25));
}

TEST_CASE("evaluation reports export one labeled csv row") {
  EvaluationReport rep;
  rep.scenarioCount = 3;
  rep.meanCost = 75.5;
  rep.p20 = 60.0;
  rep.p80 = 90.0;
  rep.meanWaitByPosition = {1.0, 2.0};
  rep.meanIdleByPosition = {0.5, 0.25};
  rep.meanWaitMinutes = 3.0;
  rep.meanIdleMinutes = 0.75;
  rep.meanOvertimeMinutes = 0.1;
  rep.meanTravelMinutes = 58.0;
  rep.interArrival = {20.0, 45.0};
  const std::string text = report_to_csv(rep);
  CHECK(text.rfind("scenario_count,mean_cost,p20,p80", 0) == 0);
  CHECK(text.find("mean_wait_1") != std::string::npos);
  CHECK(text.find("mean_idle_2") != std::string::npos);
  CHECK(text.find("interarrival_1") != std::string::npos);
  CHECK(text.find("75.5") != std::string::npos);
  CHECK(text.find("58") != std::string::npos);
}

TEST_CASE("sweep tables and plot rows use the documented columns") {
  const std::string sweep = sweep_to_csv({{0.25, 70.0, 65.0, 80.0}, {1.0, 68.0, 64.0, 75.0}});
  CHECK(sweep.rfind("epsilon,mean,p20,p80", 0) == 0);
  CHECK(sweep.find("\n0.25,") != std::string::npos);

  const std::string plot =
      plot_rows_to_csv({{0.1, "saa", 70.0, 65.0, 80.0}, {1.0, "dro", 68.0, 64.0, 75.0}});
  CHECK(plot.rfind("x,series,y,p20,p80", 0) == 0);
  CHECK(plot.find("saa") != std::string::npos);
  CHECK(plot.find("dro") != std::string::npos);
}

TEST_CASE("text files round trip and missing paths raise io errors") {
  const std::string path = "hras_io_roundtrip.tmp";
  const std::string content = "alpha\nbeta, gamma\n";
  write_text_file(path, content);
  CHECK(read_text_file(path) == content);
  std::remove(path.c_str());
  CHECK_THROWS_AS(read_text_file("definitely/not/a/real/path.json"), IoError);
  CHECK_THROWS_AS(write_text_file("definitely/not/a/real/path.json", "x"), IoError);
}
