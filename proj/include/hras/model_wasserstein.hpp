#pragma once

#include <vector>

#include "hras/domain.hpp"
#include "hras/formulation.hpp"
#include "hras/linear_model.hpp"
#include "hras/solve.hpp"

namespace hras {

/** Ball of radius `radius` in 1-Wasserstein distance (ell_1 ground metric on
 *  the stacked service/travel vector) around the empirical distribution of
 *  `samples`, intersected with the instance support box. */
struct WassersteinAmbiguity {
  std::vector<Scenario> samples;
  double radius = 0.0;
};

struct WdhrasOptions {
  bool symmetryBreaking = false;
};

struct WdhrasModel {
  LinearModel model;
  FirstStageVars fs;
};

/// Radii used by the stock experiment sweeps.
inline constexpr double kEpsilonPresets[3] = {0.5, 5.0, 50.0};

/** Upper bound on the useful range of the Wasserstein multiplier: beyond
 *  max(max pi, max idle cost) + lambda every coordinate supremum is attained
 *  at the sample point, so larger multipliers change nothing. */
double rho_upper_bound(const CostStructure& costs, int N);

/** Distributionally robust model over the Wasserstein ball.
 *
 *  min eps*rhoW + (1/R) sum_r [ sum_i psi^r_{i,0} + sum_j beta^r_j ]
 *
 *  Per sample r, the beta^r cascade bounds every dual-extreme-point value of
 *  the penalized supremum sup_xi { f(x,a,xi) - rhoW * |xi - xihat_r|_1 }.
 *  Each coordinate supremum is attained at the box lower end, the sample, or
 *  the box upper end; epigraph variables u/nu dominate those 2-3 affine-in-
 *  rhoW candidates (the sample candidate is their constant lower bound), and
 *  McCormick products couple them with the assignment binaries. The route
 *  binaries x and the transition products tau are shared across samples.
 *
 *  Throws std::invalid_argument when samples are empty, radius < 0, or a
 *  sample leaves the support box. */
WdhrasModel build_wdhras(const Instance& inst, const WassersteinAmbiguity& amb,
                         const WdhrasOptions& opts = {});

/** Worst-case expected cost of a fixed decision over the ball: builds the
 *  model with x and a pinned and solves what is then a pure LP. */
double wdhras_worstcase(const FirstStageDecision& dec, const Instance& inst,
                        const WassersteinAmbiguity& amb, const SolveOptions& sopts = {},
                        const WdhrasOptions& opts = {});

/** sup_xi { f(dec, xi) - rhoW * |xi - sample|_1 } by enumerating the dual
 *  extreme points and taking the closed-form coordinate-wise maxima over the
 *  {lower, sample, upper} candidate points. Reference implementation for the
 *  per-sample blocks of build_wdhras; cost O(2^{N+1} * N). */
double g_r_value(double rhoW, const FirstStageDecision& dec, const Scenario& sample,
                 const Instance& inst);

/** Fixed-decision worst case over the ball, independent of any MILP: golden
 *  section search of the convex h(rho) = eps*rho + (1/R) sum_r g_r_value(rho)
 *  over [0, rho_upper_bound], tolerance 1e-7 in rho. Practical for N <= 4. */
double wasserstein_oracle(const FirstStageDecision& dec, const Instance& inst,
                          const WassersteinAmbiguity& amb);

}  // namespace hras
