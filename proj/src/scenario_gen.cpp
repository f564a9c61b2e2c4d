#include "hras/scenario_gen.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

namespace hras {

namespace {

constexpr std::uint64_t kTagMu = 1;
constexpr std::uint64_t kTagService = 2;
constexpr std::uint64_t kTagTravel = 3;

std::uint64_t mix(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ull;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

double round_into(double v, double lo, double hi, bool rounding) {
  if (!rounding) return v;
  return std::clamp(static_cast<double>(std::llround(v)), lo, hi);
}

double draw_uniform(SplitMix64& g, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(g);
}

// lognormal with untruncated mean m and sd 0.5*m, rejected into [lo, hi]
double draw_trunc_lognormal(SplitMix64& g, double m, double lo, double hi) {
  const double sd2 = std::log(1.25);  // log(1 + (sd/m)^2)
  const double mu = std::log(m) - 0.5 * sd2;
  std::lognormal_distribution<double> dist(mu, std::sqrt(sd2));
  for (int tries = 0; tries < 100000; ++tries) {
    const double v = dist(g);
    if (v >= lo && v <= hi) return v;
  }
  throw std::runtime_error("truncated lognormal rejection did not terminate");
}

// Beta(0.5, 0.5) by inverse transform, rescaled to [lo, hi]
double draw_arcsine(SplitMix64& g, double lo, double hi) {
  const double u = draw_uniform(g, 0.0, 1.0);
  const double s = std::sin(0.25 * std::acos(-1.0) * 2.0 * u);
  return lo + (hi - lo) * s * s;
}

}  // namespace

SplitMix64::result_type SplitMix64::operator()() {
  state += 0x9e3779b97f4a7c15ull;
  std::uint64_t z = state;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

SplitMix64 substream(std::uint64_t seed, std::uint64_t tag, std::uint64_t a, std::uint64_t b) {
  std::uint64_t s = mix(seed ^ mix(tag));
  s = mix(s ^ mix(a * 0x9e3779b97f4a7c15ull));
  s = mix(s ^ mix(b * 0xc2b2ae3d27d4eb4full));
  return SplitMix64{s};
}

GeneratedInstance gen_instance(const GenConfig& cfg) {
  if (cfg.N < 1) throw std::invalid_argument("gen_instance: N must be positive");
  GeneratedInstance out;
  Instance& inst = out.inst;
  inst.N = cfg.N;
  inst.L = 480.0;
  inst.costs = CostStructure::uniform(cfg.N, cfg.waitCost, cfg.idleCost, cfg.overtimeCost,
                                      cfg.lambda);
  const size_t n = static_cast<size_t>(cfg.N);
  inst.serviceLower.assign(n, 10.0);
  inst.serviceUpper.assign(n, 50.0);
  inst.travelLower.assign(n + 1, dvec(n + 1, 15.0));
  inst.travelUpper.assign(n + 1, dvec(n + 1, 25.0));
  for (size_t i = 0; i <= n; ++i) inst.travelLower[i][i] = inst.travelUpper[i][i] = 0.0;
  out.latentMu.resize(n);
  for (int i = 0; i < cfg.N; ++i) {
    SplitMix64 g = substream(cfg.seed, kTagMu, static_cast<std::uint64_t>(i), 0);
    out.latentMu[static_cast<size_t>(i)] = draw_uniform(g, 25.0, 35.0);
  }
  return out;
}

Instance oos_support(const Instance& inst, const GenConfig& cfg) {
  if ((cfg.oosSet == OosSet::Set3 || cfg.oosSet == OosSet::Set5) && cfg.delta <= 0.0)
    throw std::invalid_argument("oos_support: Set3/Set5 need a positive delta");
  Instance out = inst;
  const int N = inst.N;
  auto stretch_service = [&] {
    for (int i = 0; i < N; ++i) {
      out.serviceLower[static_cast<size_t>(i)] *= 1.0 - cfg.delta;
      out.serviceUpper[static_cast<size_t>(i)] *= 1.0 + cfg.delta;
    }
  };
  auto stretch_travel = [&] {
    for (int i = 0; i <= N; ++i)
      for (int ip = 0; ip <= N; ++ip) {
        if (ip == i) continue;
        out.travelLower[static_cast<size_t>(i)][static_cast<size_t>(ip)] *= 1.0 - cfg.delta;
        out.travelUpper[static_cast<size_t>(i)][static_cast<size_t>(ip)] *= 1.0 + cfg.delta;
      }
  };
  switch (cfg.oosSet) {
    case OosSet::Set1:
    case OosSet::Set4:
      break;
    case OosSet::Set2:
      for (int i = 0; i <= N; ++i)
        for (int ip = 0; ip <= N; ++ip) {
          if (ip == i) continue;
          out.travelLower[static_cast<size_t>(i)][static_cast<size_t>(ip)] = 25.0;
          out.travelUpper[static_cast<size_t>(i)][static_cast<size_t>(ip)] = 35.0;
        }
      break;
    case OosSet::Set3:
      stretch_service();
      stretch_travel();
      break;
    case OosSet::Set5:
      stretch_service();
      break;
  }
  return out;
}

std::vector<Scenario> gen_scenarios(const Instance& inst, const dvec& latentMu, int R,
                                    const GenConfig& cfg) {
  if (R < 1) throw std::invalid_argument("gen_scenarios: R must be positive");
  if (static_cast<int>(latentMu.size()) != inst.N)
    throw std::invalid_argument("gen_scenarios: latentMu size mismatch");
  const Instance box = oos_support(inst, cfg);
  const int N = inst.N;
  std::vector<Scenario> out(static_cast<size_t>(R));
  for (int r = 0; r < R; ++r) {
    Scenario& sc = out[static_cast<size_t>(r)];
    sc.service.resize(static_cast<size_t>(N));
    sc.travel.assign(static_cast<size_t>(N + 1), dvec(static_cast<size_t>(N + 1), 0.0));
    for (int i = 0; i < N; ++i) {
      SplitMix64 g = substream(cfg.seed, kTagService, static_cast<std::uint64_t>(i),
                               static_cast<std::uint64_t>(r));
      const double lo = box.serviceLower[static_cast<size_t>(i)];
      const double hi = box.serviceUpper[static_cast<size_t>(i)];
      const double v = cfg.oosSet == OosSet::Set4
                           ? draw_arcsine(g, lo, hi)
                           : draw_trunc_lognormal(g, latentMu[static_cast<size_t>(i)], lo, hi);
      sc.service[static_cast<size_t>(i)] = round_into(v, lo, hi, cfg.rounding);
    }
    for (int i = 0; i <= N; ++i)
      for (int ip = 0; ip <= N; ++ip) {
        if (ip == i) continue;
        SplitMix64 g = substream(cfg.seed, kTagTravel,
                                 static_cast<std::uint64_t>(i * (N + 1) + ip),
                                 static_cast<std::uint64_t>(r));
        const double lo = box.travelLower[static_cast<size_t>(i)][static_cast<size_t>(ip)];
        const double hi = box.travelUpper[static_cast<size_t>(i)][static_cast<size_t>(ip)];
        sc.travel[static_cast<size_t>(i)][static_cast<size_t>(ip)] =
            round_into(draw_uniform(g, lo, hi), lo, hi, cfg.rounding);
      }
  }
  return out;
}

}  // namespace hras
