#include "hras/recourse.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace hras {

namespace {

// Dummy-extended per-position costs: cw_{N+1} = co, cu_{N+1} = 0 and both
// zero at N+2, so position N+1 prices overtime and N+2 is inert.
double cw_ext(const CostStructure& c, int N, int l) {
  if (l <= N) return c.waitCost[static_cast<size_t>(l - 1)];
  if (l == N + 1) return c.overtimeCost;
  return 0.0;
}

double cu_ext(const CostStructure& c, int N, int v) {
  if (v <= N) return c.idleCost[static_cast<size_t>(v - 1)];
  return 0.0;
}

// Balance right-hand sides q_1..q_{N+1} for a fixed decision and scenario:
// q_j is the drift between the appointment gap and the work arriving at
// position j.
dvec balance_rhs(const FirstStageDecision& dec, const Scenario& sc,
                 const Instance& inst) {
  const std::vector<int> route = route_of(dec);
  const int N = static_cast<int>(route.size());
  if (static_cast<int>(sc.service.size()) != N ||
      static_cast<int>(sc.travel.size()) != N + 1 ||
      static_cast<int>(dec.appointments.size()) != N)
    throw std::invalid_argument("recourse: dimension mismatch");
  const dvec& a = dec.appointments;
  dvec q(static_cast<size_t>(N + 2), 0.0);  // q[1..N+1]
  q[1] = sc.travel[0][static_cast<size_t>(route[0])] - a[0];
  for (int j = 2; j <= N; ++j) {
    const int prev = route[static_cast<size_t>(j - 2)];
    const int cur = route[static_cast<size_t>(j - 1)];
    q[static_cast<size_t>(j)] = a[static_cast<size_t>(j - 2)] -
                                a[static_cast<size_t>(j - 1)] +
                                sc.service[static_cast<size_t>(prev - 1)] +
                                sc.travel[static_cast<size_t>(prev)][static_cast<size_t>(cur)];
  }
  const int last = route[static_cast<size_t>(N - 1)];
  q[static_cast<size_t>(N + 1)] =
      a[static_cast<size_t>(N - 1)] - inst.L + sc.service[static_cast<size_t>(last - 1)];
  return q;
}

}  // namespace

RecourseOutcome evaluate_recourse(const FirstStageDecision& dec,
                                  const Scenario& sc, const Instance& inst) {
  const int N = inst.N;
  const dvec q = balance_rhs(dec, sc, inst);
  RecourseOutcome out;
  out.wait.assign(static_cast<size_t>(N + 1), 0.0);
  out.idle.assign(static_cast<size_t>(N + 1), 0.0);
  double prevWait = 0.0;
  for (int j = 1; j <= N + 1; ++j) {
    const double state = (j == 1 ? 0.0 : prevWait) + q[static_cast<size_t>(j)];
    out.wait[static_cast<size_t>(j - 1)] = std::max(state, 0.0);
    out.idle[static_cast<size_t>(j - 1)] = std::max(-state, 0.0);
    prevWait = out.wait[static_cast<size_t>(j - 1)];
  }
  out.travelTotal = travel_total(dec, sc);
  double cost = inst.costs.travelCost * out.travelTotal;
  for (int j = 1; j <= N; ++j)
    cost += inst.costs.waitCost[static_cast<size_t>(j - 1)] * out.wait[static_cast<size_t>(j - 1)] +
            inst.costs.idleCost[static_cast<size_t>(j - 1)] * out.idle[static_cast<size_t>(j - 1)];
  cost += inst.costs.overtimeCost * out.wait[static_cast<size_t>(N)];
  out.cost = cost;
  return out;
}

LinearModel recourse_lp(const FirstStageDecision& dec, const Scenario& sc,
                        const Instance& inst) {
  const int N = inst.N;
  const dvec q = balance_rhs(dec, sc, inst);
  LinearModel m;
  std::vector<int> w(static_cast<size_t>(N + 1)), u(static_cast<size_t>(N + 1));
  for (int j = 1; j <= N + 1; ++j) {
    w[static_cast<size_t>(j - 1)] = m.add_var("w_" + std::to_string(j), 0.0, kInf);
    u[static_cast<size_t>(j - 1)] = m.add_var("u_" + std::to_string(j), 0.0, kInf);
  }
  for (int j = 1; j <= N + 1; ++j) {
    LinExpr e;
    e.add(w[static_cast<size_t>(j - 1)], 1.0);
    e.add(u[static_cast<size_t>(j - 1)], -1.0);
    if (j > 1) e.add(w[static_cast<size_t>(j - 2)], -1.0);
    m.add_constr("bal_" + std::to_string(j), e, ConSense::EQ, q[static_cast<size_t>(j)]);
  }
  LinExpr obj;
  for (int j = 1; j <= N; ++j) {
    obj.add(w[static_cast<size_t>(j - 1)], inst.costs.waitCost[static_cast<size_t>(j - 1)]);
    obj.add(u[static_cast<size_t>(j - 1)], inst.costs.idleCost[static_cast<size_t>(j - 1)]);
  }
  obj.add(w[static_cast<size_t>(N)], inst.costs.overtimeCost);
  obj.addConstant(inst.costs.travelCost * travel_total(dec, sc));
  m.set_objective(obj);
  return m;
}

std::vector<DualPartition> dual_partitions(int N) {
  if (N < 1) throw std::invalid_argument("dual_partitions: N must be >= 1");
  const int m = N + 2;
  const unsigned long count = 1ul << (m - 1);
  std::vector<DualPartition> out;
  out.reserve(count);
  for (unsigned long mask = 0; mask < count; ++mask) {
    DualPartition p;
    int k = 1;
    for (int pos = 1; pos <= m; ++pos) {
      const bool breakHere = pos == m || (mask >> (pos - 1)) & 1ul;
      if (breakHere) {
        p.intervals.emplace_back(k, pos);
        k = pos + 1;
      }
    }
    out.push_back(std::move(p));
  }
  return out;
}

dvec dual_vector(const DualPartition& part, const CostStructure& costs, int N) {
  dvec y(static_cast<size_t>(N + 2) + 1, 0.0);  // 1-based scratch
  for (const auto& [k, v] : part.intervals) {
    y[static_cast<size_t>(v)] = -cu_ext(costs, N, v);
    for (int j = v - 1; j >= k; --j)
      y[static_cast<size_t>(j)] = y[static_cast<size_t>(j + 1)] + cw_ext(costs, N, j);
  }
  return dvec(y.begin() + 1, y.end());  // y_1..y_{N+2}
}

void for_each_dual_extreme_point(
    const CostStructure& costs, int N,
    const std::function<void(const DualPartition&, const dvec&)>& fn) {
  for (const DualPartition& p : dual_partitions(N)) fn(p, dual_vector(p, costs, N));
}

double dual_value(const dvec& y, const FirstStageDecision& dec,
                  const Scenario& sc, const Instance& inst) {
  const int N = inst.N;
  if (y.size() != static_cast<size_t>(N + 1) && y.size() != static_cast<size_t>(N + 2))
    throw std::invalid_argument("dual_value: y must have length N+1 or N+2");
  const CostStructure& c = inst.costs;
  double scale = 1.0 + c.overtimeCost;
  for (int j = 1; j <= N; ++j)
    scale = std::max({scale, c.waitCost[static_cast<size_t>(j - 1)],
                      c.idleCost[static_cast<size_t>(j - 1)]});
  const double tol = 1e-9 * scale;
  const double yNp1 = y[static_cast<size_t>(N)];
  if (yNp1 < -tol || yNp1 > c.overtimeCost + tol)
    throw std::invalid_argument("dual_value: y_{N+1} outside [0, co]");
  for (int j = 1; j <= N; ++j) {
    const double yj = y[static_cast<size_t>(j - 1)];
    const double ynext = y[static_cast<size_t>(j)];
    if (yj < -c.idleCost[static_cast<size_t>(j - 1)] - tol ||
        yj > c.waitCost[static_cast<size_t>(j - 1)] + ynext + tol)
      throw std::invalid_argument("dual_value: y_" + std::to_string(j) +
                                  " violates the dual polytope");
  }
  const dvec q = balance_rhs(dec, sc, inst);
  double val = inst.costs.travelCost * travel_total(dec, sc);
  for (int j = 1; j <= N + 1; ++j)
    val += q[static_cast<size_t>(j)] * y[static_cast<size_t>(j - 1)];
  return val;
}

}  // namespace hras
