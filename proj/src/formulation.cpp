#include "hras/formulation.hpp"

#include <algorithm>
#include <stdexcept>

namespace hras {

namespace {

double cw_ext(const CostStructure& c, int N, int l) {
  if (l <= N) return c.waitCost[static_cast<size_t>(l - 1)];
  if (l == N + 1) return c.overtimeCost;
  return 0.0;
}

double cu_ext(const CostStructure& c, int N, int v) {
  if (v <= N) return c.idleCost[static_cast<size_t>(v - 1)];
  return 0.0;
}

std::string id2(const char* p, int i, int j) {
  return std::string(p) + "_" + std::to_string(i) + "_" + std::to_string(j);
}

}  // namespace

PiTable pi_table(const CostStructure& costs, int N) {
  if (N < 1) throw std::invalid_argument("pi_table: N must be >= 1");
  PiTable t;
  t.N = N;
  const size_t m = static_cast<size_t>(N + 2);
  t.val.assign(m + 1, dvec(m + 1, 0.0));
  for (int v = 1; v <= N + 2; ++v) {
    t.val[static_cast<size_t>(v)][static_cast<size_t>(v)] = -cu_ext(costs, N, v);
    for (int j = v - 1; j >= 1; --j)
      t.val[static_cast<size_t>(j)][static_cast<size_t>(v)] =
          t.val[static_cast<size_t>(j + 1)][static_cast<size_t>(v)] + cw_ext(costs, N, j);
  }
  return t;
}

FirstStageVars first_stage_blocks(LinearModel& m, const Instance& inst) {
  const int N = inst.N;
  FirstStageVars fs;
  fs.x.assign(static_cast<size_t>(N + 1), std::vector<int>(static_cast<size_t>(N + 1), -1));
  fs.a.assign(static_cast<size_t>(N + 1), -1);
  for (int i = 1; i <= N; ++i)
    for (int j = 1; j <= N; ++j)
      fs.x[static_cast<size_t>(i)][static_cast<size_t>(j)] =
          m.add_var(id2("x", i, j), 0.0, 1.0, VarKind::Binary);
  for (int j = 1; j <= N; ++j)
    fs.a[static_cast<size_t>(j)] = m.add_var("a_" + std::to_string(j), 0.0, inst.L);

  for (int i = 1; i <= N; ++i) {
    LinExpr e;
    for (int j = 1; j <= N; ++j) e.add(fs.x[static_cast<size_t>(i)][static_cast<size_t>(j)], 1.0);
    m.add_constr("asg_row_" + std::to_string(i), e, ConSense::EQ, 1.0);
  }
  for (int j = 1; j <= N; ++j) {
    LinExpr e;
    for (int i = 1; i <= N; ++i) e.add(fs.x[static_cast<size_t>(i)][static_cast<size_t>(j)], 1.0);
    m.add_constr("asg_col_" + std::to_string(j), e, ConSense::EQ, 1.0);
  }
  for (int j = 2; j <= N; ++j) {
    LinExpr e;
    e.add(fs.a[static_cast<size_t>(j)], 1.0);
    e.add(fs.a[static_cast<size_t>(j - 1)], -1.0);
    m.add_constr("ord_" + std::to_string(j), e, ConSense::GE, 0.0);
  }
  return fs;
}

TauVars tau_linearization(LinearModel& m, const FirstStageVars& fs, int N) {
  TauVars tau;
  tau.N = N;
  const int n1 = N + 1;
  tau.ids.assign(static_cast<size_t>(std::max(0, (N - 1)) * n1 * n1), -1);
  for (int j = 2; j <= N; ++j)
    for (int i = 1; i <= N; ++i)
      for (int ip = 1; ip <= N; ++ip) {
        if (ip == i) continue;
        const std::string name = "tau_" + std::to_string(i) + "_" + std::to_string(ip) +
                                 "_" + std::to_string(j - 1) + "_" + std::to_string(j);
        const int t = m.add_var(name, 0.0, 1.0);
        tau.ids[static_cast<size_t>(((j - 2) * n1 + i) * n1 + ip)] = t;
        const int xPrev = fs.x[static_cast<size_t>(i)][static_cast<size_t>(j - 1)];
        const int xCur = fs.x[static_cast<size_t>(ip)][static_cast<size_t>(j)];
        LinExpr lo;  // tau >= x_{i,j-1} + x_{i',j} - 1
        lo.add(t, 1.0).add(xPrev, -1.0).add(xCur, -1.0);
        m.add_constr("tmc1_" + name.substr(4), lo, ConSense::GE, -1.0);
        LinExpr upPrev;
        upPrev.add(t, 1.0).add(xPrev, -1.0);
        m.add_constr("tmc2_" + name.substr(4), upPrev, ConSense::LE, 0.0);
        LinExpr upCur;
        upCur.add(t, 1.0).add(xCur, -1.0);
        m.add_constr("tmc3_" + name.substr(4), upCur, ConSense::LE, 0.0);
      }
  return tau;
}

void symmetry_breaking(LinearModel& m, const FirstStageVars& fs, int N) {
  for (int j = 2; j <= N - 2; ++j) {
    LinExpr e;
    e.add(fs.x[1][static_cast<size_t>(j)], 1.0);
    e.add(fs.x[1][static_cast<size_t>(j + 1)], -1.0);
    m.add_constr("sbc1_" + std::to_string(j), e, ConSense::GE, 0.0);
  }
  for (int i = 2; i <= N; ++i)
    for (int j = 3; j <= N - 1; ++j) {
      LinExpr e;
      e.add(fs.x[static_cast<size_t>(i)][static_cast<size_t>(j)], 1.0);
      for (int l = 1; l < i; ++l)
        e.add(fs.x[static_cast<size_t>(l)][static_cast<size_t>(j - 1)], -1.0);
      m.add_constr(id2("sbc2", i, j), e, ConSense::LE, 0.0);
    }
}

void mccormick_bin_cont(LinearModel& m, int z, int bin, int cont, double lo,
                        double hi, const std::string& tag) {
  LinExpr e1;  // z >= lo * bin
  e1.add(z, 1.0).add(bin, -lo);
  m.add_constr(tag + "_1", e1, ConSense::GE, 0.0);
  LinExpr e2;  // z >= cont + hi * (bin - 1)
  e2.add(z, 1.0).add(cont, -1.0).add(bin, -hi);
  m.add_constr(tag + "_2", e2, ConSense::GE, -hi);
  LinExpr e3;  // z <= hi * bin
  e3.add(z, 1.0).add(bin, -hi);
  m.add_constr(tag + "_3", e3, ConSense::LE, 0.0);
  LinExpr e4;  // z <= cont + lo * (bin - 1)
  e4.add(z, 1.0).add(cont, -1.0).add(bin, -lo);
  m.add_constr(tag + "_4", e4, ConSense::LE, -lo);
}

}  // namespace hras
