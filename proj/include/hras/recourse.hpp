#pragma once

#include <functional>
#include <utility>
#include <vector>

#include "hras/domain.hpp"
#include "hras/linear_model.hpp"

// Second-stage cost f(x, a, xi): the minimal total of waiting, idling,
// overtime and travel once service and travel times realize. Evaluated three
// independent ways (forward recursion, primal LP, dual extreme-point
// enumeration) so each implementation checks the others.

namespace hras {

struct RecourseOutcome {
  dvec wait;  // w_j, length N+1; w_{N+1} is overtime past L
  dvec idle;  // u_j, length N+1; u_{N+1} is schedule earliness (costless)
  double travelTotal = 0.0;  // A
  double cost = 0.0;
};

/**
 * Exact second-stage minimizer by forward recursion.
 *
 * The balance constraints couple consecutive positions through
 *   w_j - u_j = w_{j-1} + Delta_j,   w_j, u_j >= 0,
 * where Delta_j collects the appointment gap, the previous service time and
 * the incoming travel leg. Waiting and idling trade one for one in each
 * constraint and every unit of waiting propagates forward, so taking
 *   w_j = (w_{j-1} + Delta_j)^+,  u_j = (-(w_{j-1} + Delta_j))^+
 * is optimal whenever all penalty rates are nonnegative. Position N+1 closes
 * the day against a_{N+1} = L; its earliness u_{N+1} carries no cost.
 */
RecourseOutcome evaluate_recourse(const FirstStageDecision& dec,
                                  const Scenario& sc, const Instance& inst);

// The same minimization as an explicit LP in (w, u); its optimum must match
// evaluate_recourse. Exists as an oracle, not for production evaluation.
LinearModel recourse_lp(const FirstStageDecision& dec, const Scenario& sc,
                        const Instance& inst);

// Interval partition of [N+2]; one-to-one with the extreme points of the
// recourse dual polytope Y.
struct DualPartition {
  std::vector<std::pair<int, int>> intervals;  // [k, v], 1-based, contiguous
};

// All 2^{N+1} interval partitions of [N+2], enumeration order fixed.
std::vector<DualPartition> dual_partitions(int N);

// Extreme point of Y for a partition: inside interval [k, v] the dual takes
// y_v = -cu_v and y_j = pi_{j,v} for j in [k, v-1], with the dummy costs
// cw_{N+1} = co, cu_{N+1} = 0, cw_{N+2} = cu_{N+2} = 0. Returns y_1..y_{N+2}.
dvec dual_vector(const DualPartition& part, const CostStructure& costs, int N);

// Visits every (partition, extreme point) pair.
void for_each_dual_extreme_point(
    const CostStructure& costs, int N,
    const std::function<void(const DualPartition&, const dvec&)>& fn);

/**
 * Dual objective at a feasible y: the balance right-hand sides weighted by y
 * plus the fixed travel charge lambda * A. Throws std::invalid_argument when
 * y violates the dual polytope
 *   0 <= y_{N+1} <= co,   -cu_j <= y_j <= cw_j + y_{j+1}  for j in [N].
 * Accepts y of length N+1 or N+2 (the last dummy entry is always zero).
 */
double dual_value(const dvec& y, const FirstStageDecision& dec,
                  const Scenario& sc, const Instance& inst);

}  // namespace hras
