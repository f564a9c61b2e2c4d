#pragma once

#include <cstdint>
#include <vector>

#include "hras/domain.hpp"

namespace hras {

/// Out-of-sample test distributions; Set1 is the training distribution.
enum class OosSet { Set1, Set2, Set3, Set4, Set5 };

struct GenConfig {
  int N = 6;
  std::uint64_t seed = 1;
  bool rounding = true;
  OosSet oosSet = OosSet::Set1;
  double delta = 0.0;  // support stretch, Set3/Set5 only, one of {0.1, 0.25, 0.5}
  // uniform cost structure applied to the generated instance
  double waitCost = 2.0;
  double idleCost = 1.0;
  double overtimeCost = 20.0;
  double lambda = 0.5;
};

struct GeneratedInstance {
  Instance inst;
  dvec latentMu;  // per-customer service mean, drawn from U[25,35]
};

/** Counter-based RNG stream: every coordinate of every scenario gets its own
 *  substream derived from (seed, tag, coordinate, scenario index), so draws
 *  never shift when the scenario count changes. */
struct SplitMix64 {
  using result_type = std::uint64_t;
  std::uint64_t state;
  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return ~0ull; }
  result_type operator()();
};

SplitMix64 substream(std::uint64_t seed, std::uint64_t tag, std::uint64_t a, std::uint64_t b);

/** Instance with service box [10,50], travel box [15,25], L = 480 minutes and
 *  the configured uniform costs; the latent per-customer means drive
 *  gen_scenarios and are not part of the instance. */
GeneratedInstance gen_instance(const GenConfig& cfg);

/** Support box the scenarios of cfg.oosSet are drawn on: Set2 moves travel to
 *  [25,35]; Set3 stretches both boxes to [(1-delta)*lower, (1+delta)*upper];
 *  Set5 stretches only the service box. Instance costs are untouched. */
Instance oos_support(const Instance& inst, const GenConfig& cfg);

/** R scenarios of the selected set. Service times are lognormal with mean
 *  latentMu[i] and sd 0.5*latentMu[i] (moments of the untruncated law;
 *  underlying normal parameters recovered in closed form), truncated to the
 *  support by rejection; travel times are uniform on the support; Set4 draws
 *  service from Beta(0.5,0.5) rescaled to [10,50] by inverse transform.
 *  Values are rounded to the nearest integer when cfg.rounding is set. */
std::vector<Scenario> gen_scenarios(const Instance& inst, const dvec& latentMu, int R,
                                    const GenConfig& cfg);

}  // namespace hras
