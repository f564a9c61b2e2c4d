#include "hras/model_moment.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "hras/recourse.hpp"

namespace hras {

namespace {

std::string sub(std::initializer_list<int> ids) {
  std::string s;
  for (int v : ids) {
    s += '_';
    s += std::to_string(v);
  }
  return s;
}

// Means must lie inside the box; on coordinates where the box is degenerate
// the mean may (and must) sit on the single point.
void check_means(const Instance& inst, const MomentAmbiguity& amb) {
  const int N = inst.N;
  if (static_cast<int>(amb.serviceMean.size()) != N ||
      static_cast<int>(amb.travelMean.size()) != N + 1)
    throw std::invalid_argument("mdhras: ambiguity mean dimensions mismatch");
  auto bad = [](double mu, double lo, double hi) {
    if (mu < lo || mu > hi) return true;       // outside
    return lo < hi && (mu == lo || mu == hi);  // on the boundary of a real box
  };
  for (int i = 0; i < N; ++i)
    if (bad(amb.serviceMean[static_cast<size_t>(i)], inst.serviceLower[static_cast<size_t>(i)],
            inst.serviceUpper[static_cast<size_t>(i)]))
      throw std::invalid_argument("mdhras: serviceMean[" + std::to_string(i) +
                                  "] not strictly inside the support box");
  for (int i = 0; i <= N; ++i)
    for (int ip = 0; ip <= N; ++ip) {
      if (i == ip) continue;
      if (bad(amb.travelMean[static_cast<size_t>(i)][static_cast<size_t>(ip)],
              inst.travelLower[static_cast<size_t>(i)][static_cast<size_t>(ip)],
              inst.travelUpper[static_cast<size_t>(i)][static_cast<size_t>(ip)]))
        throw std::invalid_argument("mdhras: travelMean[" + std::to_string(i) + "][" +
                                    std::to_string(ip) + "] not strictly inside the support box");
    }
}

}  // namespace

MomentAmbiguity ambiguity_from_samples(const Instance& inst,
                                       const std::vector<Scenario>& samples) {
  if (samples.empty())
    throw std::invalid_argument("ambiguity_from_samples: no samples");
  const int N = inst.N;
  const double invR = 1.0 / static_cast<double>(samples.size());
  auto inward = [](double mean, double lo, double hi) {
    if (lo >= hi) return lo;
    const double nudge = std::max(1e-9, 1e-6 * (hi - lo));
    return std::clamp(mean, lo + nudge, hi - nudge);
  };
  MomentAmbiguity amb;
  amb.serviceMean.assign(static_cast<size_t>(N), 0.0);
  amb.travelMean.assign(static_cast<size_t>(N + 1), dvec(static_cast<size_t>(N + 1), 0.0));
  for (const Scenario& sc : samples) {
    for (int i = 0; i < N; ++i)
      amb.serviceMean[static_cast<size_t>(i)] += invR * sc.service[static_cast<size_t>(i)];
    for (int i = 0; i <= N; ++i)
      for (int ip = 0; ip <= N; ++ip)
        if (ip != i)
          amb.travelMean[static_cast<size_t>(i)][static_cast<size_t>(ip)] +=
              invR * sc.travel[static_cast<size_t>(i)][static_cast<size_t>(ip)];
  }
  for (int i = 0; i < N; ++i)
    amb.serviceMean[static_cast<size_t>(i)] =
        inward(amb.serviceMean[static_cast<size_t>(i)], inst.serviceLower[static_cast<size_t>(i)],
               inst.serviceUpper[static_cast<size_t>(i)]);
  for (int i = 0; i <= N; ++i)
    for (int ip = 0; ip <= N; ++ip)
      if (ip != i)
        amb.travelMean[static_cast<size_t>(i)][static_cast<size_t>(ip)] =
            inward(amb.travelMean[static_cast<size_t>(i)][static_cast<size_t>(ip)],
                   inst.travelLower[static_cast<size_t>(i)][static_cast<size_t>(ip)],
                   inst.travelUpper[static_cast<size_t>(i)][static_cast<size_t>(ip)]);
  return amb;
}

TightBounds tight_bounds(const CostStructure& costs, int N) {
  const PiTable pi = pi_table(costs, N);
  TightBounds tb;
  tb.lambda = costs.travelCost;
  tb.P1upper = -kInf;
  tb.P1lower = kInf;
  for (int j = 2; j <= N + 1; ++j)
    for (int v = j; v <= N + 2; ++v) {
      tb.P1upper = std::max(tb.P1upper, pi(j, v));
      tb.P1lower = std::min(tb.P1lower, pi(j, v));
    }
  tb.P2upper = -kInf;
  tb.P2lower = kInf;
  for (int v = 1; v <= N + 2; ++v) {
    tb.P2upper = std::max(tb.P2upper, pi(1, v));
    tb.P2lower = std::min(tb.P2lower, pi(1, v));
  }
  return tb;
}

MdhrasModel build_mdhras(const Instance& inst, const MomentAmbiguity& amb,
                         const MdhrasOptions& opts) {
  check_means(inst, amb);
  const int N = inst.N;
  const CostStructure& c = inst.costs;
  const double lam = c.travelCost;
  const PiTable pi = pi_table(c, N);
  const TightBounds tb = tight_bounds(c, N);
  const double s = opts.bigMScale;
  const SupportDeltas delta = support_deltas(inst);
  const dvec& dLo = inst.serviceLower;
  const dmat& tLo = inst.travelLower;
  const dvec& muD = amb.serviceMean;
  const dmat& muT = amb.travelMean;

  MdhrasModel out;
  LinearModel& m = out.model;
  out.fs = first_stage_blocks(m, inst);
  const FirstStageVars& fs = out.fs;
  const TauVars tau = tau_linearization(m, fs, N);
  if (opts.symmetryBreaking) symmetry_breaking(m, fs, N);

  auto x = [&](int i, int j) { return fs.x[static_cast<size_t>(i)][static_cast<size_t>(j)]; };

  // dual multipliers
  std::vector<int> rho(static_cast<size_t>(N + 1), -1);
  for (int i = 1; i <= N; ++i)
    rho[static_cast<size_t>(i)] =
        m.add_var("rho" + sub({i}), s * tb.rhoLo(), s * tb.rhoHi());
  std::vector<int> alphaOut(static_cast<size_t>(N + 1), -1);  // alpha_{0,i}
  for (int i = 1; i <= N; ++i)
    alphaOut[static_cast<size_t>(i)] =
        m.add_var("alpha" + sub({0, i}), s * tb.alphaOutLo(), s * tb.alphaOutHi());
  std::vector<int> alphaMid(static_cast<size_t>((N + 1) * (N + 1)), -1);  // alpha_{i,i'}
  auto alphaAt = [&](int i, int ip) -> int& {
    return alphaMid[static_cast<size_t>(i * (N + 1) + ip)];
  };
  for (int i = 1; i <= N; ++i)
    for (int ip = 1; ip <= N; ++ip)
      if (ip != i)
        alphaAt(i, ip) =
            m.add_var("alpha" + sub({i, ip}), s * tb.alphaMidLo(), s * tb.alphaMidHi());

  std::vector<int> beta(static_cast<size_t>(N + 3), -1);
  for (int j = 1; j <= N + 2; ++j)
    beta[static_cast<size_t>(j)] =
        m.add_var("beta" + sub({j}), j == N + 2 ? 0.0 : -kInf, kInf);

  // epigraph variables for the positive parts of (pi + lambda - alpha) and
  // (pi - rho)
  std::vector<int> gammaOut(static_cast<size_t>((N + 1) * (N + 3)), -1);
  auto gammaOutAt = [&](int i, int v) -> int& {
    return gammaOut[static_cast<size_t>(i * (N + 3) + v)];
  };
  for (int i = 1; i <= N; ++i)
    for (int v = 1; v <= N + 2; ++v) {
      const int g = m.add_var("gamma" + sub({0, i, 1, v}), 0.0, s * tb.gammaOutHi(pi(1, v)));
      gammaOutAt(i, v) = g;
      LinExpr e;  // gamma >= pi_{1,v} + lambda - alpha_{0,i}
      e.add(g, 1.0).add(alphaOut[static_cast<size_t>(i)], 1.0);
      m.add_constr("gdefo" + sub({i, v}), e, ConSense::GE, pi(1, v) + lam);
    }

  auto midIndex = [&](int i, int ip, int j, int v) {
    return static_cast<size_t>(((i * (N + 1) + ip) * (N + 1) + j) * (N + 3) + v);
  };
  std::vector<int> gammaMid(static_cast<size_t>((N + 1) * (N + 1) * (N + 1) * (N + 3)), -1);
  for (int i = 1; i <= N; ++i)
    for (int ip = 1; ip <= N; ++ip) {
      if (ip == i) continue;
      for (int j = 2; j <= N; ++j)
        for (int v = j; v <= N + 2; ++v) {
          const int g =
              m.add_var("gamma" + sub({i, ip, j, v}), 0.0, s * tb.gammaMidHi(pi(j, v)));
          gammaMid[midIndex(i, ip, j, v)] = g;
          LinExpr e;  // gamma >= pi_{j,v} + lambda - alpha_{i,i'}
          e.add(g, 1.0).add(alphaAt(i, ip), 1.0);
          m.add_constr("gdefm" + sub({i, ip, j, v}), e, ConSense::GE, pi(j, v) + lam);
        }
    }

  auto dIndex = [&](int i, int j, int v) {
    return static_cast<size_t>((i * (N + 2) + j) * (N + 3) + v);
  };
  std::vector<int> deltaVar(static_cast<size_t>((N + 1) * (N + 2) * (N + 3)), -1);
  for (int i = 1; i <= N; ++i)
    for (int j = 2; j <= N + 1; ++j)
      for (int v = j; v <= N + 2; ++v) {
        const int dv = m.add_var("delta" + sub({i, j, v}), 0.0, s * tb.deltaHi(pi(j, v)));
        deltaVar[dIndex(i, j, v)] = dv;
        LinExpr e;  // delta >= pi_{j,v} - rho_i
        e.add(dv, 1.0).add(rho[static_cast<size_t>(i)], 1.0);
        m.add_constr("ddef" + sub({i, j, v}), e, ConSense::GE, pi(j, v));
      }

  // linearization products
  std::vector<int> psi(static_cast<size_t>(N + 1), -1);  // alpha_{0,i} x_{i,1}
  for (int i = 1; i <= N; ++i) {
    const double lo = s * tb.alphaOutLo(), hi = s * tb.alphaOutHi();
    const int p = m.add_var("psi" + sub({0, i}), std::min(0.0, lo), std::max(0.0, hi));
    psi[static_cast<size_t>(i)] = p;
    mccormick_bin_cont(m, p, x(i, 1), alphaOut[static_cast<size_t>(i)], lo, hi,
                       "psimc" + sub({i}));
  }
  std::vector<int> eta(static_cast<size_t>((N + 1) * (N + 1) * (N + 1)), -1);
  auto etaAt = [&](int i, int ip, int j) -> int& {
    return eta[static_cast<size_t>((i * (N + 1) + ip) * (N + 1) + j)];
  };
  for (int j = 2; j <= N; ++j)
    for (int i = 1; i <= N; ++i)
      for (int ip = 1; ip <= N; ++ip) {
        if (ip == i) continue;
        const double lo = s * tb.alphaMidLo(), hi = s * tb.alphaMidHi();
        const int e = m.add_var("eta" + sub({i, ip, j - 1, j}), std::min(0.0, lo),
                                std::max(0.0, hi));
        etaAt(i, ip, j) = e;
        mccormick_bin_cont(m, e, tau(i, ip, j), alphaAt(i, ip), lo, hi,
                           "etamc" + sub({i, ip, j}));
      }
  std::vector<int> sigma(static_cast<size_t>((N + 1) * (N + 3)), -1);  // gammaOut x_{i,1}
  auto sigmaAt = [&](int i, int v) -> int& {
    return sigma[static_cast<size_t>(i * (N + 3) + v)];
  };
  for (int i = 1; i <= N; ++i)
    for (int v = 1; v <= N + 2; ++v) {
      const double hi = s * tb.gammaOutHi(pi(1, v));
      const int sg = m.add_var("sigma" + sub({0, i, 1, v}), 0.0, hi);
      sigmaAt(i, v) = sg;
      mccormick_bin_cont(m, sg, x(i, 1), gammaOutAt(i, v), 0.0, hi, "sigmc" + sub({i, v}));
    }
  std::vector<int> phi(static_cast<size_t>((N + 1) * (N + 1) * (N + 1) * (N + 3)), -1);
  for (int i = 1; i <= N; ++i)
    for (int ip = 1; ip <= N; ++ip) {
      if (ip == i) continue;
      for (int j = 2; j <= N; ++j)
        for (int v = j; v <= N + 2; ++v) {
          const double hi = s * tb.gammaMidHi(pi(j, v));
          const int p = m.add_var("phi" + sub({i, ip, j, v}), 0.0, hi);
          phi[midIndex(i, ip, j, v)] = p;
          mccormick_bin_cont(m, p, tau(i, ip, j), gammaMid[midIndex(i, ip, j, v)], 0.0, hi,
                             "phimc" + sub({i, ip, j, v}));
        }
    }
  std::vector<int> zeta(static_cast<size_t>((N + 1) * (N + 2)), -1);  // rho_i x_{i,j-1}
  auto zetaAt = [&](int i, int j) -> int& {
    return zeta[static_cast<size_t>(i * (N + 2) + j)];
  };
  for (int i = 1; i <= N; ++i)
    for (int j = 2; j <= N + 1; ++j) {
      const double lo = s * tb.rhoLo(), hi = s * tb.rhoHi();
      const int z = m.add_var("zeta" + sub({i, j}), std::min(0.0, lo), std::max(0.0, hi));
      zetaAt(i, j) = z;
      mccormick_bin_cont(m, z, x(i, j - 1), rho[static_cast<size_t>(i)], lo, hi,
                         "zetmc" + sub({i, j}));
    }
  std::vector<int> auxXi(static_cast<size_t>((N + 1) * (N + 2) * (N + 3)), -1);
  for (int i = 1; i <= N; ++i)
    for (int j = 2; j <= N + 1; ++j)
      for (int v = j; v <= N + 2; ++v) {
        const double hi = s * tb.deltaHi(pi(j, v));
        const int xv = m.add_var("auxXi" + sub({i, j, v}), 0.0, hi);
        auxXi[dIndex(i, j, v)] = xv;
        mccormick_bin_cont(m, xv, x(i, j - 1), deltaVar[dIndex(i, j, v)], 0.0, hi,
                           "ximc" + sub({i, j, v}));
      }

  // beta cascade: one inequality per interval [k, v] of [N+2] except the
  // trivial [N+2, N+2], which is the bound beta_{N+2} >= 0.
  for (int k = 1; k <= N + 1; ++k)
    for (int v = (k == 1 ? 1 : k); v <= N + 2; ++v) {
      LinExpr e;
      double rhs = 0.0;
      for (int j = k; j <= v; ++j) e.add(beta[static_cast<size_t>(j)], 1.0);
      if (k == 1) {
        // -a_1 pi_{1,v} + depot-out block
        e.add(fs.a[1], pi(1, v));
        for (int i = 1; i <= N; ++i) {
          const double tl = tLo[0][static_cast<size_t>(i)];
          const double dt = delta.deltaTravel[0][static_cast<size_t>(i)];
          e.add(x(i, 1), -tl * (pi(1, v) + lam));
          e.add(psi[static_cast<size_t>(i)], tl);
          e.add(sigmaAt(i, v), -dt);
        }
      }
      const int jStart = std::max(k, 2);
      for (int j = jStart; j <= std::min(v, N + 1); ++j) {
        // (a_{j-1} - a_j) pi_{j,v}; a_{N+1} = L is constant
        e.add(fs.a[static_cast<size_t>(j - 1)], -pi(j, v));
        if (j <= N)
          e.add(fs.a[static_cast<size_t>(j)], pi(j, v));
        else
          rhs -= inst.L * pi(j, v);
        // service block at position j-1
        for (int i = 1; i <= N; ++i) {
          const double dl = dLo[static_cast<size_t>(i - 1)];
          const double dd = delta.deltaService[static_cast<size_t>(i - 1)];
          e.add(x(i, j - 1), -dl * pi(j, v));
          e.add(zetaAt(i, j), dl);
          e.add(auxXi[dIndex(i, j, v)], -dd);
        }
        // travel block for the leg into position j; vanishes at j = N+1
        if (j <= N)
          for (int i = 1; i <= N; ++i)
            for (int ip = 1; ip <= N; ++ip) {
              if (ip == i) continue;
              const double tl = tLo[static_cast<size_t>(i)][static_cast<size_t>(ip)];
              const double dt = delta.deltaTravel[static_cast<size_t>(i)][static_cast<size_t>(ip)];
              e.add(tau(i, ip, j), -tl * (pi(j, v) + lam));
              e.add(etaAt(i, ip, j), tl);
              e.add(phi[midIndex(i, ip, j, v)], -dt);
            }
      }
      m.add_constr("cas" + sub({k, v}), e, ConSense::GE, rhs);
    }

  LinExpr obj;
  for (int i = 1; i <= N; ++i) obj.add(rho[static_cast<size_t>(i)], muD[static_cast<size_t>(i - 1)]);
  for (int j = 2; j <= N; ++j)
    for (int i = 1; i <= N; ++i)
      for (int ip = 1; ip <= N; ++ip)
        if (ip != i)
          obj.add(etaAt(i, ip, j), muT[static_cast<size_t>(i)][static_cast<size_t>(ip)]);
  for (int i = 1; i <= N; ++i)
    obj.add(x(i, N), lam * muT[static_cast<size_t>(i)][0]);
  for (int i = 1; i <= N; ++i)
    obj.add(psi[static_cast<size_t>(i)], muT[0][static_cast<size_t>(i)]);
  for (int j = 1; j <= N + 2; ++j) obj.add(beta[static_cast<size_t>(j)], 1.0);
  m.set_objective(obj);
  return out;
}

double mdhras_worstcase(const FirstStageDecision& dec, const Instance& inst,
                        const MomentAmbiguity& amb, const SolveOptions& sopts,
                        const MdhrasOptions& opts) {
  MdhrasModel built = build_mdhras(inst, amb, opts);
  const int N = inst.N;
  for (int i = 1; i <= N; ++i)
    for (int j = 1; j <= N; ++j)
      built.model.fix_var(built.fs.x[static_cast<size_t>(i)][static_cast<size_t>(j)],
                          dec.assignment[static_cast<size_t>(i - 1)][static_cast<size_t>(j - 1)]);
  for (int j = 1; j <= N; ++j)
    built.model.fix_var(built.fs.a[static_cast<size_t>(j)],
                        dec.appointments[static_cast<size_t>(j - 1)]);
  const SolveResult res = solve(built.model, sopts);
  if (res.status != SolveStatus::Optimal && res.status != SolveStatus::GapFeasible)
    throw std::runtime_error("mdhras_worstcase: solve ended with status " +
                             std::string(to_string(res.status)));
  return res.objective;
}

double moment_worstcase_oracle(const FirstStageDecision& dec, const Instance& inst,
                               const MomentAmbiguity& amb, const SolveOptions& sopts) {
  check_means(inst, amb);
  const int N = inst.N;
  if (N > 5)
    throw std::invalid_argument("moment_worstcase_oracle: enumeration needs N <= 5");
  const std::vector<int> route = route_of(dec);

  // coordinates that matter for a fixed route: every service time plus the
  // N+1 traveled legs
  struct Coord {
    bool isService;
    int i, ip;  // service customer i, or leg (i, ip)
    double lo, hi;
  };
  std::vector<Coord> coords;
  for (int i = 1; i <= N; ++i)
    coords.push_back({true, i, 0, inst.serviceLower[static_cast<size_t>(i - 1)],
                      inst.serviceUpper[static_cast<size_t>(i - 1)]});
  auto leg = [&](int i, int ip) {
    coords.push_back({false, i, ip, inst.travelLower[static_cast<size_t>(i)][static_cast<size_t>(ip)],
                      inst.travelUpper[static_cast<size_t>(i)][static_cast<size_t>(ip)]});
  };
  leg(0, route[0]);
  for (int p = 2; p <= N; ++p) leg(route[static_cast<size_t>(p - 2)], route[static_cast<size_t>(p - 1)]);
  leg(route[static_cast<size_t>(N - 1)], 0);

  LinearModel m;
  std::vector<int> rho(static_cast<size_t>(N + 1), -1);
  for (int i = 1; i <= N; ++i)
    rho[static_cast<size_t>(i)] = m.add_var("rho" + sub({i}), -kInf, kInf);
  std::vector<int> alphaVar;  // one per leg coordinate, in coords order
  for (const Coord& c : coords)
    if (!c.isService)
      alphaVar.push_back(m.add_var("alpha" + sub({c.i, c.ip}), -kInf, kInf));
  const int theta = m.add_var("theta", -kInf, kInf);

  LinExpr obj;
  for (int i = 1; i <= N; ++i)
    obj.add(rho[static_cast<size_t>(i)], amb.serviceMean[static_cast<size_t>(i - 1)]);
  {
    size_t legIdx = 0;
    for (const Coord& c : coords)
      if (!c.isService)
        obj.add(alphaVar[legIdx++],
                amb.travelMean[static_cast<size_t>(c.i)][static_cast<size_t>(c.ip)]);
  }
  obj.add(theta, 1.0);
  m.set_objective(obj);

  // one epigraph constraint per (box vertex, dual extreme point)
  Scenario sc;
  sc.service.assign(static_cast<size_t>(N), 0.0);
  sc.travel.assign(static_cast<size_t>(N + 1), dvec(static_cast<size_t>(N + 1), 0.0));
  for (int i = 0; i <= N; ++i)
    for (int ip = 0; ip <= N; ++ip)
      if (i != ip) sc.travel[static_cast<size_t>(i)][static_cast<size_t>(ip)] =
          inst.travelLower[static_cast<size_t>(i)][static_cast<size_t>(ip)];

  const std::vector<DualPartition> parts = dual_partitions(N);
  std::vector<dvec> duals;
  duals.reserve(parts.size());
  for (const DualPartition& p : parts) duals.push_back(dual_vector(p, inst.costs, N));

  const unsigned long vertexCount = 1ul << coords.size();
  int conId = 0;
  for (unsigned long mask = 0; mask < vertexCount; ++mask) {
    for (size_t ci = 0; ci < coords.size(); ++ci) {
      const Coord& c = coords[ci];
      const double val = ((mask >> ci) & 1ul) ? c.hi : c.lo;
      if (c.isService)
        sc.service[static_cast<size_t>(c.i - 1)] = val;
      else
        sc.travel[static_cast<size_t>(c.i)][static_cast<size_t>(c.ip)] = val;
    }
    for (const dvec& y : duals) {
      const double fval = dual_value(y, dec, sc, inst);
      LinExpr e;
      e.add(theta, 1.0);
      size_t legIdx = 0;
      for (size_t ci = 0; ci < coords.size(); ++ci) {
        const Coord& c = coords[ci];
        const double val = ((mask >> ci) & 1ul) ? c.hi : c.lo;
        if (c.isService)
          e.add(rho[static_cast<size_t>(c.i)], val);
        else
          e.add(alphaVar[legIdx++], val);
      }
      m.add_constr("epi" + sub({conId++}), e, ConSense::GE, fval);
    }
  }

  SolveOptions lpOpts = sopts;
  lpOpts.gap = 0.0;
  const SolveResult res = solve(m, lpOpts);
  if (res.status != SolveStatus::Optimal)
    throw std::runtime_error("moment_worstcase_oracle: solve ended with status " +
                             std::string(to_string(res.status)));
  return res.objective;
}

}  // namespace hras
