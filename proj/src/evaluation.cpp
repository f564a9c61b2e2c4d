#include "hras/evaluation.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <stdexcept>
#include <thread>

#include "hras/model_saa.hpp"
#include "hras/model_wasserstein.hpp"
#include "hras/recourse.hpp"

namespace hras {

double percentile_nearest_rank(dvec values, double pct) {
  if (values.empty()) throw std::invalid_argument("percentile of empty sample");
  if (pct <= 0.0 || pct > 100.0) throw std::invalid_argument("percentile out of (0,100]");
  std::sort(values.begin(), values.end());
  const auto n = static_cast<double>(values.size());
  auto rank = static_cast<size_t>(std::ceil(pct / 100.0 * n));
  rank = std::max<size_t>(rank, 1);
  return values[rank - 1];
}

dvec default_epsilon_grid() {
  dvec g;
  for (int i = 1; i <= 9; ++i) g.push_back(i / 100.0);
  for (int i = 1; i <= 9; ++i) g.push_back(i / 10.0);
  for (int i = 1; i <= 10; ++i) g.push_back(static_cast<double>(i));
  return g;
}

void parallel_for(int count, int workers, const std::function<void(int)>& fn) {
  if (count <= 0) return;
  workers = std::min(workers, count);
  if (workers <= 1) {
    for (int i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<int> next{0};
  std::exception_ptr firstError;
  std::mutex errorMutex;
  auto body = [&] {
    for (;;) {
      const int i = next.fetch_add(1);
      if (i >= count) return;
      try {
        fn(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(errorMutex);
        if (!firstError) firstError = std::current_exception();
      }
    }
  };
  std::vector<std::thread> pool;
  pool.reserve(static_cast<size_t>(workers));
  for (int w = 0; w < workers; ++w) pool.emplace_back(body);
  for (std::thread& t : pool) t.join();
  if (firstError) std::rethrow_exception(firstError);
}

EvaluationReport out_of_sample(const FirstStageDecision& dec,
                               const std::vector<Scenario>& scenarios, const Instance& inst) {
  if (scenarios.empty()) throw std::invalid_argument("out_of_sample: no scenarios");
  const int N = inst.N;
  const double invS = 1.0 / static_cast<double>(scenarios.size());

  EvaluationReport rep;
  rep.scenarioCount = static_cast<int>(scenarios.size());
  rep.meanWaitByPosition.assign(static_cast<size_t>(N), 0.0);
  rep.meanIdleByPosition.assign(static_cast<size_t>(N), 0.0);
  dvec costs;
  costs.reserve(scenarios.size());
  for (const Scenario& sc : scenarios) {
    const RecourseOutcome oc = evaluate_recourse(dec, sc, inst);
    costs.push_back(oc.cost);
    rep.meanCost += invS * oc.cost;
    for (int j = 0; j < N; ++j) {
      rep.meanWaitByPosition[static_cast<size_t>(j)] += invS * oc.wait[static_cast<size_t>(j)];
      rep.meanIdleByPosition[static_cast<size_t>(j)] += invS * oc.idle[static_cast<size_t>(j)];
    }
    rep.meanOvertimeMinutes += invS * oc.wait[static_cast<size_t>(N)];
    rep.meanTravelMinutes += invS * oc.travelTotal;
  }
  for (double w : rep.meanWaitByPosition) rep.meanWaitMinutes += w;
  for (double u : rep.meanIdleByPosition) rep.meanIdleMinutes += u;
  rep.p20 = percentile_nearest_rank(costs, 20.0);
  rep.p80 = percentile_nearest_rank(costs, 80.0);
  rep.interArrival = interarrival_profile(dec);
  return rep;
}

ReliabilityResult reliability(const std::vector<ReliabilityEntry>& entries) {
  if (entries.empty()) throw std::invalid_argument("reliability: no entries");
  ReliabilityResult out;
  out.instanceCount = static_cast<int>(entries.size());
  out.oosCount = static_cast<int>(entries.front().oos.size());
  int hits = 0;
  for (const ReliabilityEntry& e : entries) {
    const EvaluationReport rep = out_of_sample(e.dec, e.oos, *e.inst);
    if (e.modelValue >= rep.meanCost) ++hits;
  }
  out.fraction = static_cast<double>(hits) / static_cast<double>(out.instanceCount);
  return out;
}

dvec interarrival_profile(const FirstStageDecision& dec) {
  dvec gaps(dec.appointments.size());
  double prev = 0.0;
  for (size_t j = 0; j < dec.appointments.size(); ++j) {
    gaps[j] = dec.appointments[j] - prev;
    prev = dec.appointments[j];
  }
  return gaps;
}

std::vector<SweepCell> epsilon_sweep(const std::function<SweepReplication(int)>& replication,
                                     int replications, const dvec& grid,
                                     const SolveOptions& sopts, int workers) {
  if (grid.empty()) throw std::invalid_argument("epsilon_sweep: empty grid");
  if (replications < 1) throw std::invalid_argument("epsilon_sweep: no replications");
  dvec radii = grid;
  std::sort(radii.begin(), radii.end());
  const size_t G = radii.size();

  // means[rep][g]
  std::vector<dvec> means(static_cast<size_t>(replications), dvec(G, 0.0));
  parallel_for(replications, workers, [&](int repIdx) {
    const SweepReplication data = replication(repIdx);
    WassersteinAmbiguity amb;
    amb.samples = data.training;
    for (size_t g = 0; g < G; ++g) {
      amb.radius = radii[g];
      WdhrasModel built = build_wdhras(data.inst, amb);
      const SolveResult res = solve(built.model, sopts);
      if (!res.hasSolution())
        throw std::runtime_error("epsilon_sweep: solve ended with status " +
                                 std::string(to_string(res.status)));
      const FirstStageDecision dec = extract_decision(built.fs, res, data.inst.N);
      means[static_cast<size_t>(repIdx)][g] =
          out_of_sample(dec, data.oos, data.inst).meanCost;
    }
  });

  std::vector<SweepCell> table(G);
  for (size_t g = 0; g < G; ++g) {
    dvec perRep(static_cast<size_t>(replications));
    for (int r = 0; r < replications; ++r) perRep[static_cast<size_t>(r)] = means[static_cast<size_t>(r)][g];
    SweepCell& cell = table[g];
    cell.epsilon = radii[g];
    for (double v : perRep) cell.mean += v;
    cell.mean /= static_cast<double>(replications);
    cell.p20 = percentile_nearest_rank(perRep, 20.0);
    cell.p80 = percentile_nearest_rank(perRep, 80.0);
  }
  return table;
}

}  // namespace hras
