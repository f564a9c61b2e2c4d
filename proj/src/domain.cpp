#include "hras/domain.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace hras {

CostStructure CostStructure::uniform(int N, double cw, double cu, double co,
                                     double lambda) {
  CostStructure c;
  c.waitCost.assign(static_cast<size_t>(N), cw);
  c.idleCost.assign(static_cast<size_t>(N), cu);
  c.overtimeCost = co;
  c.travelCost = lambda;
  return c;
}

namespace {

std::string idx(const char* field, size_t i) {
  std::ostringstream os;
  os << field << "[" << i << "]";
  return os.str();
}

std::string idx2(const char* field, size_t i, size_t j) {
  std::ostringstream os;
  os << field << "[" << i << "][" << j << "]";
  return os.str();
}

void check_matrix(std::vector<std::string>& out, const dmat& m, size_t n,
                  const char* name) {
  if (m.size() != n) {
    out.push_back(std::string(name) + ": expected " + std::to_string(n) +
                  " rows, got " + std::to_string(m.size()));
    return;
  }
  for (size_t i = 0; i < n; ++i)
    if (m[i].size() != n)
      out.push_back(idx(name, i) + ": expected " + std::to_string(n) +
                    " columns, got " + std::to_string(m[i].size()));
}

}  // namespace

std::vector<std::string> validate_instance(const Instance& inst) {
  std::vector<std::string> v;
  if (inst.N < 1) {
    v.push_back("N: must be >= 1, got " + std::to_string(inst.N));
    return v;
  }
  const size_t N = static_cast<size_t>(inst.N);
  const size_t M = N + 1;
  if (!(inst.L > 0.0)) v.push_back("L: must be > 0");

  if (inst.costs.waitCost.size() != N) v.push_back("costs.waitCost: length != N");
  if (inst.costs.idleCost.size() != N) v.push_back("costs.idleCost: length != N");
  for (size_t j = 0; j < inst.costs.waitCost.size(); ++j)
    if (inst.costs.waitCost[j] < 0) v.push_back(idx("costs.waitCost", j) + ": negative");
  for (size_t j = 0; j < inst.costs.idleCost.size(); ++j)
    if (inst.costs.idleCost[j] < 0) v.push_back(idx("costs.idleCost", j) + ": negative");
  if (inst.costs.overtimeCost < 0) v.push_back("costs.overtimeCost: negative");
  if (inst.costs.travelCost < 0) v.push_back("costs.travelCost: negative");

  if (inst.serviceLower.size() != N) v.push_back("serviceLower: length != N");
  if (inst.serviceUpper.size() != N) v.push_back("serviceUpper: length != N");
  if (inst.serviceLower.size() == N && inst.serviceUpper.size() == N) {
    for (size_t i = 0; i < N; ++i) {
      if (inst.serviceLower[i] < 0) v.push_back(idx("serviceLower", i) + ": negative");
      if (inst.serviceLower[i] > inst.serviceUpper[i])
        v.push_back(idx("serviceLower", i) + " > " + idx("serviceUpper", i));
    }
  }

  check_matrix(v, inst.travelLower, M, "travelLower");
  check_matrix(v, inst.travelUpper, M, "travelUpper");
  if (inst.travelLower.size() == M && inst.travelUpper.size() == M) {
    for (size_t i = 0; i < M; ++i) {
      if (inst.travelLower[i].size() != M || inst.travelUpper[i].size() != M) continue;
      for (size_t j = 0; j < M; ++j) {
        if (i == j) continue;  // diagonal unused
        if (inst.travelLower[i][j] < 0) v.push_back(idx2("travelLower", i, j) + ": negative");
        if (inst.travelLower[i][j] > inst.travelUpper[i][j])
          v.push_back(idx2("travelLower", i, j) + " > " + idx2("travelUpper", i, j));
      }
    }
  }

  if (inst.serviceMean) {
    if (inst.serviceMean->size() != N) {
      v.push_back("serviceMean: length != N");
    } else if (inst.serviceLower.size() == N && inst.serviceUpper.size() == N) {
      for (size_t i = 0; i < N; ++i)
        if ((*inst.serviceMean)[i] < inst.serviceLower[i] ||
            (*inst.serviceMean)[i] > inst.serviceUpper[i])
          v.push_back(idx("serviceMean", i) + ": outside support box");
    }
  }
  if (inst.travelMean) {
    check_matrix(v, *inst.travelMean, M, "travelMean");
    if (inst.travelMean->size() == M && inst.travelLower.size() == M &&
        inst.travelUpper.size() == M) {
      for (size_t i = 0; i < M; ++i)
        for (size_t j = 0; j < M && j < (*inst.travelMean)[i].size(); ++j) {
          if (i == j) continue;
          if ((*inst.travelMean)[i][j] < inst.travelLower[i][j] ||
              (*inst.travelMean)[i][j] > inst.travelUpper[i][j])
            v.push_back(idx2("travelMean", i, j) + ": outside support box");
        }
    }
  }
  return v;
}

std::vector<int> route_of(const FirstStageDecision& dec) {
  const size_t N = dec.assignment.size();
  if (N == 0) throw std::invalid_argument("route_of: empty assignment");
  std::vector<int> route(N, 0);
  std::vector<int> seen(N, 0);
  for (size_t i = 0; i < N; ++i) {
    if (dec.assignment[i].size() != N)
      throw std::invalid_argument("route_of: assignment is not square");
    int rowSum = 0;
    for (size_t j = 0; j < N; ++j) {
      const int x = dec.assignment[i][j];
      if (x != 0 && x != 1)
        throw std::invalid_argument("route_of: assignment entries must be 0/1");
      if (x == 1) {
        rowSum += 1;
        route[j] = static_cast<int>(i) + 1;
        seen[j] += 1;
      }
    }
    if (rowSum != 1)
      throw std::invalid_argument("route_of: row " + std::to_string(i) +
                                  " sum != 1");
  }
  for (size_t j = 0; j < N; ++j)
    if (seen[j] != 1)
      throw std::invalid_argument("route_of: column " + std::to_string(j) +
                                  " sum != 1");
  return route;
}

FirstStageDecision decision_from_route(const std::vector<int>& route,
                                       const dvec& appointments) {
  const size_t N = route.size();
  FirstStageDecision dec;
  dec.assignment.assign(N, std::vector<int>(N, 0));
  for (size_t j = 0; j < N; ++j) {
    const int i = route[j];
    if (i < 1 || static_cast<size_t>(i) > N)
      throw std::invalid_argument("decision_from_route: customer id out of range");
    dec.assignment[static_cast<size_t>(i - 1)][j] = 1;
  }
  dec.appointments = appointments;
  return dec;
}

SupportDeltas support_deltas(const Instance& inst) {
  SupportDeltas d;
  d.deltaService.resize(inst.serviceLower.size());
  for (size_t i = 0; i < d.deltaService.size(); ++i)
    d.deltaService[i] = inst.serviceUpper[i] - inst.serviceLower[i];
  d.deltaTravel.assign(inst.travelLower.size(), dvec());
  for (size_t i = 0; i < inst.travelLower.size(); ++i) {
    d.deltaTravel[i].resize(inst.travelLower[i].size());
    for (size_t j = 0; j < inst.travelLower[i].size(); ++j)
      d.deltaTravel[i][j] = inst.travelUpper[i][j] - inst.travelLower[i][j];
  }
  return d;
}

double travel_total(const FirstStageDecision& dec, const Scenario& sc) {
  const std::vector<int> route = route_of(dec);
  const size_t N = route.size();
  double A = sc.travel[0][static_cast<size_t>(route[0])];
  for (size_t p = 1; p < N; ++p)
    A += sc.travel[static_cast<size_t>(route[p - 1])][static_cast<size_t>(route[p])];
  A += sc.travel[static_cast<size_t>(route[N - 1])][0];
  return A;
}

}  // namespace hras
