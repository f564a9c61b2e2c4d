#pragma once

#include <limits>
#include <string>
#include <unordered_map>
#include <vector>

// Solver-agnostic mixed-integer linear model: named variables with bounds and
// integrality, named linear constraints, and a minimize objective. Models are
// built once and treated as immutable afterwards; emission and solving never
// mutate them.

namespace hras {

constexpr double kInf = std::numeric_limits<double>::infinity();

enum class VarKind { Continuous, Binary };
enum class ConSense { LE, GE, EQ };

struct LinTerm {
  int var;
  double coef;
};

struct LinExpr {
  std::vector<LinTerm> terms;
  double constant = 0.0;

  LinExpr& add(int var, double coef) {
    if (coef != 0.0) terms.push_back({var, coef});
    return *this;
  }
  LinExpr& addConstant(double c) {
    constant += c;
    return *this;
  }
};

struct Variable {
  std::string name;
  double lb = 0.0;
  double ub = kInf;
  VarKind kind = VarKind::Continuous;
};

struct Constraint {
  std::string name;
  LinExpr expr;
  ConSense sense = ConSense::LE;
  double rhs = 0.0;
};

class LinearModel {
 public:
  // Returns the variable's index. Names must be unique and match
  // [A-Za-z][A-Za-z0-9_]{0,254}; violations throw std::invalid_argument.
  int add_var(const std::string& name, double lb, double ub,
              VarKind kind = VarKind::Continuous);
  void add_constr(const std::string& name, LinExpr expr, ConSense sense,
                  double rhs);
  void set_objective(LinExpr expr);  // sense is always minimize

  // Pins a variable to a constant by collapsing its bounds.
  void fix_var(int var, double value);

  int find_var(const std::string& name) const;  // -1 when absent

  const std::vector<Variable>& vars() const { return vars_; }
  const std::vector<Constraint>& constrs() const { return constrs_; }
  const LinExpr& objective() const { return objective_; }

 private:
  std::vector<Variable> vars_;
  std::vector<Constraint> constrs_;
  LinExpr objective_;
  std::unordered_map<std::string, int> byName_;
};

// Deterministic industry-standard LP text: sections Minimize / Subject To /
// Bounds / Binaries / End, variables and constraints in insertion order,
// coefficients with 17 significant digits. Identical model, identical bytes.
std::string emit_lp_file(const LinearModel& model);

}  // namespace hras
