#pragma once

#include <optional>
#include <string>
#include <vector>

// Core data types for single-operator home-service routing and appointment
// scheduling under random service and travel times.
//
// Conventions used throughout the library:
//   - customers are numbered 1..N, index 0 is the depot;
//   - travel matrices are (N+1)x(N+1), entry [i][ip] is the time from i to ip,
//     diagonal entries are never read;
//   - service vectors have length N, entry [i-1] belongs to customer i;
//   - position N+1 is the virtual return to the depot with a_{N+1} = L fixed,
//     and x_{i,N+1} = 0 implicitly (neither is stored).
// All times are minutes stored as doubles; generators round to integers but
// the types accept any nonnegative reals.

namespace hras {

using dvec = std::vector<double>;
using dmat = std::vector<dvec>;

struct CostStructure {
  dvec waitCost;              // c^w_j per minute of customer waiting, length N
  dvec idleCost;              // c^u_j per minute of operator idling, length N
  double overtimeCost = 0.0;  // c^o per minute past the horizon
  double travelCost = 0.0;    // lambda per minute of travel

  static CostStructure uniform(int N, double cw, double cu, double co,
                               double lambda);
};

struct Instance {
  int N = 0;
  double L = 0.0;  // service horizon in minutes
  CostStructure costs;
  dvec serviceLower, serviceUpper;  // support box for d_i
  dmat travelLower, travelUpper;    // support box for t_{i,i'}
  std::optional<dvec> serviceMean;  // mu^d, used by the moment model
  std::optional<dmat> travelMean;   // mu^t
};

// One joint realization xi = [t, d].
struct Scenario {
  dvec service;  // d_i, length N
  dmat travel;   // t_{i,i'}, (N+1)x(N+1)
};

struct FirstStageDecision {
  std::vector<std::vector<int>> assignment;  // x[i-1][j-1] = x_{i,j}
  dvec appointments;                         // a_j, nondecreasing in [0, L]
};

struct SupportDeltas {
  dvec deltaService;  // d_upper - d_lower
  dmat deltaTravel;   // t_upper - t_lower
};

// Empty list iff all Instance invariants hold: consistent dimensions, L > 0,
// elementwise lower <= upper, nonnegative lower bounds and costs, and means
// (when present) inside the box. Violation strings name the offending field
// with its 0-based array index.
std::vector<std::string> validate_instance(const Instance& inst);

// Route (i_1,...,i_N) with x_{i_j,j} = 1. Throws std::invalid_argument when
// the assignment is not a permutation matrix.
std::vector<int> route_of(const FirstStageDecision& dec);

// Inverse of route_of: builds the assignment matrix of a 1-based route.
FirstStageDecision decision_from_route(const std::vector<int>& route,
                                       const dvec& appointments);

SupportDeltas support_deltas(const Instance& inst);

// Total travel time A of the route under scenario sc: depot-out leg,
// inter-customer legs, and the return leg.
double travel_total(const FirstStageDecision& dec, const Scenario& sc);

}  // namespace hras
