#pragma once

#include <string>
#include <vector>

#include "hras/domain.hpp"
#include "hras/linear_model.hpp"

// Building blocks shared by the SAA, moment and Wasserstein MILP builders:
// the pi table of dual extreme-point values, assignment and appointment
// constraint blocks, the route-product linearization, McCormick envelopes,
// and optional symmetry-breaking cuts.

namespace hras {

/**
 * pi_{j,v} = -cu_v + sum_{l=j}^{v-1} cw_l for 1 <= j <= v <= N+2, using the
 * dummy-extended costs cw_{N+1} = co, cu_{N+1} = 0, cw_{N+2} = cu_{N+2} = 0.
 * pi_{j,v} is the value every dual coordinate j takes at the extreme point
 * whose partition contains the interval ending at v.
 */
struct PiTable {
  int N = 0;
  dmat val;  // val[j][v], 1-based; entries with j > v are unused

  double operator()(int j, int v) const {
    return val[static_cast<size_t>(j)][static_cast<size_t>(v)];
  }
};

PiTable pi_table(const CostStructure& costs, int N);

// Variable handles created by first_stage_blocks; 1-based access mirrors the
// subscripts (index 0 is unused).
struct FirstStageVars {
  std::vector<std::vector<int>> x;  // x[i][j]
  std::vector<int> a;               // a[j]
};

// Adds binary x_i_j with one-customer-per-position equalities, a_j in [0, L]
// and the nondecreasing-appointments orderings.
FirstStageVars first_stage_blocks(LinearModel& m, const Instance& inst);

// Handles for tau_{i,i',j-1,j} = x_{i,j-1} x_{i',j}, j in [2, N]. The j = N+1
// products vanish identically (x_{i',N+1} = 0) and are not created.
struct TauVars {
  int N = 0;
  std::vector<int> ids;

  // tau for the leg from i at position j-1 to ip at position j
  int operator()(int i, int ip, int j) const {
    const int n1 = N + 1;
    return ids[static_cast<size_t>(((j - 2) * n1 + i) * n1 + ip)];
  }
};

// Continuous tau in [0, 1] with the four envelope inequalities per product;
// integrality of x makes the products exact without extra binaries.
TauVars tau_linearization(LinearModel& m, const FirstStageVars& fs, int N);

// Lexicographic route cuts valid when all customers are distributionally
// identical: x_{1,j} >= x_{1,j+1} for j in [2,N-2] and
// x_{i,j} <= sum_{l<i} x_{l,j-1} for i in [2,N], j in [3,N-1].
void symmetry_breaking(LinearModel& m, const FirstStageVars& fs, int N);

// Envelope for z = bin * cont with cont in [lo, hi]: exact at binary bin.
void mccormick_bin_cont(LinearModel& m, int z, int bin, int cont, double lo,
                        double hi, const std::string& tag);

}  // namespace hras
