#pragma once

#include <string>
#include <vector>

#include "hras/linear_model.hpp"

// Pluggable solve contract. The backend is an external command taking
//   <model.lp> <out.sol> --gap G --time-limit T
// and writing a solution file of `name value` lines: reserved names
// status/objective/gap/nodes/walltime first, then one line per variable.
// Resolution order for the command: SolveOptions.backendCmd, then the
// HRAS_SOLVER_CMD environment variable, then the bundled scipy/HiGHS driver
// (tools/solve_backend.py). The bundled driver is kept resident in a server
// process per thread to amortize interpreter startup; set HRAS_SOLVER_ONESHOT=1
// to force one subprocess per solve.

namespace hras {

struct SolveOptions {
  double gap = 0.02;             // relative MIP gap tolerance
  double timeLimitSeconds = 0.0; // 0 disables the limit
  std::string backendCmd;        // overrides env and default when nonempty
  bool keepFiles = false;        // retain the temp dir with lp/sol/log
  std::string lpOutPath;         // also write the LP file here when nonempty
};

enum class SolveStatus { Optimal, GapFeasible, Infeasible, Unbounded, TimeLimit };

struct SolveResult {
  SolveStatus status = SolveStatus::Optimal;
  double objective = 0.0;
  std::vector<double> values;  // by variable index; empty when no incumbent
  double gap = 0.0;
  double wallSeconds = 0.0;
  long nodes = 0;

  bool hasSolution() const { return !values.empty(); }
  double value(const LinearModel& m, const std::string& name) const;
};

const char* to_string(SolveStatus s);

// Throws ConfigError when no backend is configured and SolverError when the
// backend fails; infeasible/unbounded/time-limit are reported in the result.
SolveResult solve(const LinearModel& model, const SolveOptions& opts = {});

}  // namespace hras
