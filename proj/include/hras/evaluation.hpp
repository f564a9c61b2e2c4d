#pragma once

#include <functional>
#include <vector>

#include "hras/domain.hpp"
#include "hras/solve.hpp"

namespace hras {

/** Cost decomposition of a fixed decision over a scenario set. The identity
 *  meanCost = sum_j cw_j*meanWaitByPosition_j + sum_j cu_j*meanIdleByPosition_j
 *           + co*meanOvertimeMinutes + lambda*meanTravelMinutes
 *  holds exactly; percentiles are nearest-rank over per-scenario costs. */
struct EvaluationReport {
  int scenarioCount = 0;
  double meanCost = 0.0;
  double p20 = 0.0;
  double p80 = 0.0;
  dvec meanWaitByPosition;  // positions 1..N
  dvec meanIdleByPosition;  // positions 1..N
  double meanWaitMinutes = 0.0;
  double meanIdleMinutes = 0.0;
  double meanOvertimeMinutes = 0.0;
  double meanTravelMinutes = 0.0;
  dvec interArrival;  // I_j = a_j - a_{j-1}, a_0 = 0
};

struct ReliabilityEntry {
  double modelValue = 0.0;
  FirstStageDecision dec;
  std::vector<Scenario> oos;
  const Instance* inst = nullptr;
};

struct ReliabilityResult {
  double fraction = 0.0;  // share of entries with modelValue >= out-of-sample mean
  int instanceCount = 0;
  int oosCount = 0;
};

/// Everything one sweep replication needs: the instance, the training samples
/// the model is built on, and the evaluation scenarios.
struct SweepReplication {
  Instance inst;
  std::vector<Scenario> training;
  std::vector<Scenario> oos;
};

struct SweepCell {
  double epsilon = 0.0;
  double mean = 0.0;  // mean over replications of the replication oos means
  double p20 = 0.0;   // nearest-rank percentiles over the replication means
  double p80 = 0.0;
};

/// Nearest-rank percentile, pct in (0, 100].
double percentile_nearest_rank(dvec values, double pct);

/// {0.01..0.09} by 0.01, {0.1..0.9} by 0.1, {1..10} by 1 - 28 radii.
dvec default_epsilon_grid();

/** Runs fn(0..count-1) on up to `workers` threads; any thrown exception is
 *  rethrown on the caller after all workers finish. Results must be written
 *  to per-index slots so aggregation order stays deterministic. */
void parallel_for(int count, int workers, const std::function<void(int)>& fn);

/** Expected-cost estimate of a decision by replaying the exact second-stage
 *  recursion on every scenario; no optimization involved. */
EvaluationReport out_of_sample(const FirstStageDecision& dec,
                               const std::vector<Scenario>& scenarios, const Instance& inst);

/// Fraction of entries whose model value upper-bounds the decision's
/// out-of-sample mean cost.
ReliabilityResult reliability(const std::vector<ReliabilityEntry>& entries);

/// Consecutive appointment gaps I_1..I_N with a_0 = 0.
dvec interarrival_profile(const FirstStageDecision& dec);

/** For each radius in `grid`, solves the Wasserstein model on every
 *  replication's training samples and evaluates the decision out of sample;
 *  rows come back sorted by radius. `replication(rep)` must be safe to call
 *  from worker threads. */
std::vector<SweepCell> epsilon_sweep(const std::function<SweepReplication(int)>& replication,
                                     int replications, const dvec& grid,
                                     const SolveOptions& sopts = {}, int workers = 1);

}  // namespace hras
