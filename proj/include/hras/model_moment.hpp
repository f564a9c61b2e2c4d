#pragma once

#include <vector>

#include "hras/domain.hpp"
#include "hras/formulation.hpp"
#include "hras/linear_model.hpp"
#include "hras/solve.hpp"

// Worst-case expected recourse over the mean-support ambiguity set: all
// distributions on the instance's box with the prescribed mean vector. The
// dual has service-mean multipliers rho_i, travel-mean multipliers alpha and
// a partition-indexed cascade of beta epigraph variables; products with the
// route binaries are linearized with McCormick envelopes whose coefficients
// come from the tight bounds below.

namespace hras {

struct MomentAmbiguity {
  dvec serviceMean;  // mu^d, strictly inside the service box
  dmat travelMean;   // mu^t, strictly inside the travel box
};

// Extremes of the pi table that bound every dual variable: P1 ranges over
// pi_{j,v} with j in [2,N+1], v in [j,N+2]; P2 over pi_{1,v}, v in [N+2].
struct TightBounds {
  double P1upper = 0, P1lower = 0, P2upper = 0, P2lower = 0;
  double lambda = 0;

  double rhoLo() const { return P1lower; }
  double rhoHi() const { return P1upper; }
  double alphaMidLo() const { return P1lower - lambda; }   // alpha_{i,i'}
  double alphaMidHi() const { return P1upper + lambda; }
  double alphaOutLo() const { return P2lower - lambda; }   // alpha_{0,i}
  double alphaOutHi() const { return P2upper + lambda; }
  // per-index epigraph caps; lower bounds are all zero
  double deltaHi(double pi_jv) const { return pi_jv - P1lower; }
  double gammaMidHi(double pi_jv) const { return pi_jv + 2 * lambda - P1lower; }
  double gammaOutHi(double pi_1v) const { return pi_1v + 2 * lambda - P2lower; }
};

TightBounds tight_bounds(const CostStructure& costs, int N);

// Sample means of the given scenarios, nudged strictly inside the instance
// box so the resulting ambiguity is accepted by build_mdhras.
MomentAmbiguity ambiguity_from_samples(const Instance& inst,
                                       const std::vector<Scenario>& samples);

struct MdhrasOptions {
  bool symmetryBreaking = false;
  // Scales every bound-derived coefficient; 2.0 doubles all big-M constants,
  // which must leave the optimum unchanged when the bounds are valid.
  double bigMScale = 1.0;
};

struct MdhrasModel {
  LinearModel model;
  FirstStageVars fs;
};

// Full M-DHRAS MILP. The return-leg duals alpha_{i,0} are substituted by
// lambda at build time (their minimizer in the inner problem), and the
// depot-out objective term uses the linearized psi_{0,i} = alpha_{0,i} x_{i,1}.
// Throws std::invalid_argument when a mean is outside or on the box boundary.
MdhrasModel build_mdhras(const Instance& inst, const MomentAmbiguity& amb,
                         const MdhrasOptions& opts = {});

// Fixed-decision variant: same MILP with (x, a) pinned, solved immediately.
double mdhras_worstcase(const FirstStageDecision& dec, const Instance& inst,
                        const MomentAmbiguity& amb, const SolveOptions& sopts = {},
                        const MdhrasOptions& opts = {});

// Independent oracle for the fixed-decision worst case: an epigraph LP over
// every (box vertex, dual partition) pair,
//   min_{rho, alpha} mu.rho + mu.alpha + max_{vertex, partition} (f - rho.d - alpha.t),
// with f evaluated through the recourse dual. Enumeration is exponential;
// intended for N <= 4.
double moment_worstcase_oracle(const FirstStageDecision& dec, const Instance& inst,
                               const MomentAmbiguity& amb,
                               const SolveOptions& sopts = {});

}  // namespace hras
