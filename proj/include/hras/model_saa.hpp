#pragma once

#include <string>
#include <vector>

#include "hras/domain.hpp"
#include "hras/formulation.hpp"
#include "hras/linear_model.hpp"
#include "hras/solve.hpp"

// Sample average approximation: the scenario-expanded MILP that minimizes the
// empirical mean of the second-stage cost over R training scenarios.

namespace hras {

struct SaaModelSpec {
  const Instance* instance = nullptr;
  std::vector<Scenario> scenarios;
  bool symmetryBreaking = false;
};

struct SaaModel {
  LinearModel model;
  FirstStageVars fs;
  std::vector<std::string> warnings;  // scenarios outside the declared box
};

// Variables x, a, shared tau and per-scenario (w^r, u^r, A^r); per-scenario
// balance equalities mirror the recourse LP with the first stage symbolic.
// Objective is the scenario average. Throws std::invalid_argument on R = 0.
SaaModel build_saa(const SaaModelSpec& spec);

// Route-enumeration oracle: for each of the N! routes the remaining problem
// is an LP in (a, w, u); returns the best optimum. Exponential, for
// verification at small N only.
double brute_force_saa(const SaaModelSpec& spec, const SolveOptions& opts = {});

// Reads the optimal first stage out of a solved model.
FirstStageDecision extract_decision(const FirstStageVars& fs,
                                    const SolveResult& res, int N);

}  // namespace hras
