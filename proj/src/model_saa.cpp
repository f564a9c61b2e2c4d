#include "hras/model_saa.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace hras {

namespace {

std::string rj(const char* p, int r, int j) {
  return std::string(p) + "_" + std::to_string(r) + "_" + std::to_string(j);
}

void check_spec(const SaaModelSpec& spec) {
  if (!spec.instance) throw std::invalid_argument("build_saa: null instance");
  if (spec.scenarios.empty())
    throw std::invalid_argument("build_saa: scenario list is empty");
}

std::vector<std::string> support_warnings(const SaaModelSpec& spec) {
  const Instance& inst = *spec.instance;
  std::vector<std::string> warnings;
  const size_t N = static_cast<size_t>(inst.N);
  for (size_t r = 0; r < spec.scenarios.size(); ++r) {
    const Scenario& sc = spec.scenarios[r];
    bool outside = false;
    for (size_t i = 0; i < N && !outside; ++i)
      outside = sc.service[i] < inst.serviceLower[i] || sc.service[i] > inst.serviceUpper[i];
    for (size_t i = 0; i <= N && !outside; ++i)
      for (size_t ip = 0; ip <= N && !outside; ++ip) {
        if (i == ip) continue;
        outside = sc.travel[i][ip] < inst.travelLower[i][ip] ||
                  sc.travel[i][ip] > inst.travelUpper[i][ip];
      }
    if (outside)
      warnings.push_back("scenario " + std::to_string(r + 1) +
                         " lies outside the declared support box");
  }
  return warnings;
}

}  // namespace

SaaModel build_saa(const SaaModelSpec& spec) {
  check_spec(spec);
  const Instance& inst = *spec.instance;
  const int N = inst.N;
  const int R = static_cast<int>(spec.scenarios.size());

  SaaModel out;
  out.warnings = support_warnings(spec);
  LinearModel& m = out.model;
  out.fs = first_stage_blocks(m, inst);
  const FirstStageVars& fs = out.fs;
  const TauVars tau = tau_linearization(m, fs, N);
  if (spec.symmetryBreaking) symmetry_breaking(m, fs, N);

  LinExpr obj;
  const double invR = 1.0 / R;
  for (int r = 1; r <= R; ++r) {
    const Scenario& sc = spec.scenarios[static_cast<size_t>(r - 1)];
    std::vector<int> w(static_cast<size_t>(N + 2), -1), u(static_cast<size_t>(N + 2), -1);
    for (int j = 1; j <= N + 1; ++j) {
      w[static_cast<size_t>(j)] = m.add_var(rj("w", r, j), 0.0, kInf);
      u[static_cast<size_t>(j)] = m.add_var(rj("u", r, j), 0.0, kInf);
    }
    const int A = m.add_var("A_" + std::to_string(r), 0.0, kInf);

    {
      LinExpr e;  // w - u = travel-in minus a_1
      e.add(w[1], 1.0).add(u[1], -1.0).add(fs.a[1], 1.0);
      for (int i = 1; i <= N; ++i)
        e.add(fs.x[static_cast<size_t>(i)][1], -sc.travel[0][static_cast<size_t>(i)]);
      m.add_constr(rj("bal", r, 1), e, ConSense::EQ, 0.0);
    }
    for (int j = 2; j <= N; ++j) {
      LinExpr e;
      e.add(w[static_cast<size_t>(j)], 1.0).add(w[static_cast<size_t>(j - 1)], -1.0);
      e.add(u[static_cast<size_t>(j)], -1.0);
      e.add(fs.a[static_cast<size_t>(j - 1)], -1.0).add(fs.a[static_cast<size_t>(j)], 1.0);
      for (int i = 1; i <= N; ++i)
        e.add(fs.x[static_cast<size_t>(i)][static_cast<size_t>(j - 1)],
              -sc.service[static_cast<size_t>(i - 1)]);
      for (int i = 1; i <= N; ++i)
        for (int ip = 1; ip <= N; ++ip)
          if (ip != i)
            e.add(tau(i, ip, j), -sc.travel[static_cast<size_t>(i)][static_cast<size_t>(ip)]);
      m.add_constr(rj("bal", r, j), e, ConSense::EQ, 0.0);
    }
    {
      LinExpr e;
      e.add(w[static_cast<size_t>(N + 1)], 1.0).add(w[static_cast<size_t>(N)], -1.0);
      e.add(u[static_cast<size_t>(N + 1)], -1.0);
      e.add(fs.a[static_cast<size_t>(N)], -1.0);
      for (int i = 1; i <= N; ++i)
        e.add(fs.x[static_cast<size_t>(i)][static_cast<size_t>(N)],
              -sc.service[static_cast<size_t>(i - 1)]);
      m.add_constr(rj("bal", r, N + 1), e, ConSense::EQ, -inst.L);
    }
    {
      LinExpr e;  // A - depot-out - inter legs - return = 0
      e.add(A, 1.0);
      for (int i = 1; i <= N; ++i)
        e.add(fs.x[static_cast<size_t>(i)][1], -sc.travel[0][static_cast<size_t>(i)]);
      for (int j = 2; j <= N; ++j)
        for (int i = 1; i <= N; ++i)
          for (int ip = 1; ip <= N; ++ip)
            if (ip != i)
              e.add(tau(i, ip, j), -sc.travel[static_cast<size_t>(i)][static_cast<size_t>(ip)]);
      for (int i = 1; i <= N; ++i)
        e.add(fs.x[static_cast<size_t>(i)][static_cast<size_t>(N)],
              -sc.travel[static_cast<size_t>(i)][0]);
      m.add_constr("trav_" + std::to_string(r), e, ConSense::EQ, 0.0);
    }

    for (int j = 1; j <= N; ++j) {
      obj.add(w[static_cast<size_t>(j)], invR * inst.costs.waitCost[static_cast<size_t>(j - 1)]);
      obj.add(u[static_cast<size_t>(j)], invR * inst.costs.idleCost[static_cast<size_t>(j - 1)]);
    }
    obj.add(w[static_cast<size_t>(N + 1)], invR * inst.costs.overtimeCost);
    obj.add(A, invR * inst.costs.travelCost);
  }
  m.set_objective(obj);
  return out;
}

double brute_force_saa(const SaaModelSpec& spec, const SolveOptions& opts) {
  check_spec(spec);
  const Instance& inst = *spec.instance;
  const int N = inst.N;
  const int R = static_cast<int>(spec.scenarios.size());
  std::vector<int> route(static_cast<size_t>(N));
  std::iota(route.begin(), route.end(), 1);

  double best = kInf;
  do {
    const FirstStageDecision routeDec =
        decision_from_route(route, dvec(static_cast<size_t>(N), 0.0));
    LinearModel m;
    std::vector<int> a(static_cast<size_t>(N + 1), -1);
    for (int j = 1; j <= N; ++j)
      a[static_cast<size_t>(j)] = m.add_var("a_" + std::to_string(j), 0.0, inst.L);
    for (int j = 2; j <= N; ++j) {
      LinExpr e;
      e.add(a[static_cast<size_t>(j)], 1.0).add(a[static_cast<size_t>(j - 1)], -1.0);
      m.add_constr("ord_" + std::to_string(j), e, ConSense::GE, 0.0);
    }
    LinExpr obj;
    const double invR = 1.0 / R;
    for (int r = 1; r <= R; ++r) {
      const Scenario& sc = spec.scenarios[static_cast<size_t>(r - 1)];
      std::vector<int> w(static_cast<size_t>(N + 2), -1), u(static_cast<size_t>(N + 2), -1);
      for (int j = 1; j <= N + 1; ++j) {
        w[static_cast<size_t>(j)] = m.add_var(rj("w", r, j), 0.0, kInf);
        u[static_cast<size_t>(j)] = m.add_var(rj("u", r, j), 0.0, kInf);
      }
      {
        LinExpr e;
        e.add(w[1], 1.0).add(u[1], -1.0).add(a[1], 1.0);
        m.add_constr(rj("bal", r, 1), e, ConSense::EQ,
                     sc.travel[0][static_cast<size_t>(route[0])]);
      }
      for (int j = 2; j <= N; ++j) {
        const int prev = route[static_cast<size_t>(j - 2)];
        const int cur = route[static_cast<size_t>(j - 1)];
        LinExpr e;
        e.add(w[static_cast<size_t>(j)], 1.0).add(w[static_cast<size_t>(j - 1)], -1.0);
        e.add(u[static_cast<size_t>(j)], -1.0);
        e.add(a[static_cast<size_t>(j - 1)], -1.0).add(a[static_cast<size_t>(j)], 1.0);
        m.add_constr(rj("bal", r, j), e, ConSense::EQ,
                     sc.service[static_cast<size_t>(prev - 1)] +
                         sc.travel[static_cast<size_t>(prev)][static_cast<size_t>(cur)]);
      }
      {
        const int last = route[static_cast<size_t>(N - 1)];
        LinExpr e;
        e.add(w[static_cast<size_t>(N + 1)], 1.0).add(w[static_cast<size_t>(N)], -1.0);
        e.add(u[static_cast<size_t>(N + 1)], -1.0);
        e.add(a[static_cast<size_t>(N)], -1.0);
        m.add_constr(rj("bal", r, N + 1), e, ConSense::EQ,
                     sc.service[static_cast<size_t>(last - 1)] - inst.L);
      }
      for (int j = 1; j <= N; ++j) {
        obj.add(w[static_cast<size_t>(j)], invR * inst.costs.waitCost[static_cast<size_t>(j - 1)]);
        obj.add(u[static_cast<size_t>(j)], invR * inst.costs.idleCost[static_cast<size_t>(j - 1)]);
      }
      obj.add(w[static_cast<size_t>(N + 1)], invR * inst.costs.overtimeCost);
      obj.addConstant(invR * inst.costs.travelCost * travel_total(routeDec, sc));
    }
    m.set_objective(obj);
    const SolveResult res = solve(m, opts);
    if (res.status == SolveStatus::Optimal && res.objective < best)
      best = res.objective;
  } while (std::next_permutation(route.begin(), route.end()));
  if (!std::isfinite(best))
    throw std::runtime_error("brute_force_saa: no route solved to optimality");
  return best;
}

FirstStageDecision extract_decision(const FirstStageVars& fs,
                                    const SolveResult& res, int N) {
  if (!res.hasSolution())
    throw std::invalid_argument("extract_decision: result has no solution");
  FirstStageDecision dec;
  dec.assignment.assign(static_cast<size_t>(N), std::vector<int>(static_cast<size_t>(N), 0));
  for (int i = 1; i <= N; ++i)
    for (int j = 1; j <= N; ++j)
      dec.assignment[static_cast<size_t>(i - 1)][static_cast<size_t>(j - 1)] =
          res.values[static_cast<size_t>(fs.x[static_cast<size_t>(i)][static_cast<size_t>(j)])] > 0.5
              ? 1
              : 0;
  dec.appointments.resize(static_cast<size_t>(N));
  for (int j = 1; j <= N; ++j)
    dec.appointments[static_cast<size_t>(j - 1)] =
        res.values[static_cast<size_t>(fs.a[static_cast<size_t>(j)])];
  return dec;
}

}  // namespace hras
