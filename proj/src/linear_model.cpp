#include "hras/linear_model.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace hras {

namespace {

bool valid_name(const std::string& name) {
  if (name.empty() || name.size() > 255) return false;
  if (!std::isalpha(static_cast<unsigned char>(name[0]))) return false;
  for (char c : name)
    if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_') return false;
  return true;
}

std::string num(double x) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

// Merges duplicate variables (first-occurrence order) and drops zero terms.
std::vector<LinTerm> canonical_terms(const LinExpr& e, size_t nvars) {
  std::vector<double> acc(nvars, 0.0);
  std::vector<int> order;
  std::vector<char> seen(nvars, 0);
  for (const LinTerm& t : e.terms) {
    if (!seen[static_cast<size_t>(t.var)]) {
      seen[static_cast<size_t>(t.var)] = 1;
      order.push_back(t.var);
    }
    acc[static_cast<size_t>(t.var)] += t.coef;
  }
  std::vector<LinTerm> out;
  out.reserve(order.size());
  for (int v : order)
    if (acc[static_cast<size_t>(v)] != 0.0) out.push_back({v, acc[static_cast<size_t>(v)]});
  return out;
}

void append_terms(std::string& out, const std::vector<LinTerm>& terms,
                  const std::vector<Variable>& vars, bool first) {
  for (const LinTerm& t : terms) {
    const double c = t.coef;
    if (first) {
      if (c < 0) out += "- ";
      first = false;
    } else {
      out += (c < 0) ? " - " : " + ";
    }
    out += num(std::fabs(c));
    out += ' ';
    out += vars[static_cast<size_t>(t.var)].name;
  }
}

}  // namespace

int LinearModel::add_var(const std::string& name, double lb, double ub,
                         VarKind kind) {
  if (!valid_name(name))
    throw std::invalid_argument("LinearModel: invalid variable name '" + name + "'");
  if (byName_.count(name))
    throw std::invalid_argument("LinearModel: duplicate variable '" + name + "'");
  if (lb > ub)
    throw std::invalid_argument("LinearModel: lb > ub for '" + name + "'");
  const int id = static_cast<int>(vars_.size());
  vars_.push_back({name, lb, ub, kind});
  byName_.emplace(name, id);
  return id;
}

void LinearModel::add_constr(const std::string& name, LinExpr expr,
                             ConSense sense, double rhs) {
  if (!valid_name(name))
    throw std::invalid_argument("LinearModel: invalid constraint name '" + name + "'");
  for (const LinTerm& t : expr.terms)
    if (t.var < 0 || static_cast<size_t>(t.var) >= vars_.size())
      throw std::invalid_argument("LinearModel: constraint '" + name +
                                  "' references undeclared variable");
  constrs_.push_back({name, std::move(expr), sense, rhs});
}

void LinearModel::set_objective(LinExpr expr) {
  for (const LinTerm& t : expr.terms)
    if (t.var < 0 || static_cast<size_t>(t.var) >= vars_.size())
      throw std::invalid_argument("LinearModel: objective references undeclared variable");
  objective_ = std::move(expr);
}

void LinearModel::fix_var(int var, double value) {
  vars_.at(static_cast<size_t>(var)).lb = value;
  vars_.at(static_cast<size_t>(var)).ub = value;
}

int LinearModel::find_var(const std::string& name) const {
  auto it = byName_.find(name);
  return it == byName_.end() ? -1 : it->second;
}

std::string emit_lp_file(const LinearModel& model) {
  const std::vector<Variable>& vars = model.vars();
  std::string out;
  out.reserve(4096);

  out += "Minimize\n obj:";
  {
    std::vector<LinTerm> terms = canonical_terms(model.objective(), vars.size());
    if (!terms.empty()) {
      out += ' ';
      append_terms(out, terms, vars, true);
    }
    const double c = model.objective().constant;
    if (c != 0.0) {
      if (terms.empty())
        out += (c < 0) ? " - " : " ";
      else
        out += (c < 0) ? " - " : " + ";
      out += num(std::fabs(c));
    } else if (terms.empty()) {
      out += " 0";
    }
  }
  out += "\nSubject To\n";
  for (const Constraint& con : model.constrs()) {
    std::vector<LinTerm> terms = canonical_terms(con.expr, vars.size());
    const double rhs = con.rhs - con.expr.constant;
    out += ' ';
    out += con.name;
    out += ':';
    if (terms.empty()) {
      // Degenerate but representable: 0 <op> rhs via a zero coefficient on
      // the first variable.
      out += " 0 ";
      out += vars.empty() ? "x0" : vars[0].name;
    } else {
      out += ' ';
      append_terms(out, terms, vars, true);
    }
    switch (con.sense) {
      case ConSense::LE: out += " <= "; break;
      case ConSense::GE: out += " >= "; break;
      case ConSense::EQ: out += " = "; break;
    }
    out += num(rhs);
    out += '\n';
  }

  out += "Bounds\n";
  for (const Variable& v : vars) {
    const bool lbInf = std::isinf(v.lb);
    const bool ubInf = std::isinf(v.ub);
    out += ' ';
    if (v.lb == v.ub) {
      out += v.name + " = " + num(v.lb);
    } else if (lbInf && ubInf) {
      out += v.name + " free";
    } else if (lbInf) {
      out += "-infinity <= " + v.name + " <= " + num(v.ub);
    } else if (ubInf) {
      out += v.name + " >= " + num(v.lb);
    } else {
      out += num(v.lb) + " <= " + v.name + " <= " + num(v.ub);
    }
    out += '\n';
  }

  bool anyBinary = false;
  for (const Variable& v : vars)
    if (v.kind == VarKind::Binary) { anyBinary = true; break; }
  if (anyBinary) {
    out += "Binaries\n";
    for (const Variable& v : vars)
      if (v.kind == VarKind::Binary) {
        out += ' ';
        out += v.name;
        out += '\n';
      }
  }
  out += "End\n";
  return out;
}

}  // namespace hras
