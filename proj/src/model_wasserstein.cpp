#include "hras/model_wasserstein.hpp"

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

void check_ambiguity(const Instance& inst, const WassersteinAmbiguity& amb) {
  if (amb.samples.empty()) throw std::invalid_argument("wdhras: no samples");
  if (amb.radius < 0.0) throw std::invalid_argument("wdhras: negative radius");
  const int N = inst.N;
  for (size_t r = 0; r < amb.samples.size(); ++r) {
    const Scenario& sc = amb.samples[r];
    if (static_cast<int>(sc.service.size()) != N ||
        static_cast<int>(sc.travel.size()) != N + 1)
      throw std::invalid_argument("wdhras: sample " + std::to_string(r) +
                                  " has wrong dimensions");
    for (int i = 0; i < N; ++i)
      if (sc.service[static_cast<size_t>(i)] < inst.serviceLower[static_cast<size_t>(i)] ||
          sc.service[static_cast<size_t>(i)] > inst.serviceUpper[static_cast<size_t>(i)])
        throw std::invalid_argument("wdhras: sample " + std::to_string(r) +
                                    " service time outside the support box");
    for (int i = 0; i <= N; ++i)
      for (int ip = 0; ip <= N; ++ip) {
        if (i == ip) continue;
        const double t = sc.travel[static_cast<size_t>(i)][static_cast<size_t>(ip)];
        if (t < inst.travelLower[static_cast<size_t>(i)][static_cast<size_t>(ip)] ||
            t > inst.travelUpper[static_cast<size_t>(i)][static_cast<size_t>(ip)])
          throw std::invalid_argument("wdhras: sample " + std::to_string(r) +
                                      " travel time outside the support box");
      }
  }
}

// max over the three candidate points of kappa*xi - rho*|xi - xhat| on
// [lo, hi]; the inner function is piecewise linear with its only kink at
// xhat, so lo, xhat, hi are the only candidates.
double coord_sup(double kappa, double lo, double hi, double xhat, double rho) {
  double best = kappa * xhat;
  best = std::max(best, kappa * lo - rho * (xhat - lo));
  best = std::max(best, kappa * hi - rho * (hi - xhat));
  return best;
}

}  // namespace

double rho_upper_bound(const CostStructure& costs, int N) {
  const PiTable pi = pi_table(costs, N);
  double m = 0.0;
  for (int j = 1; j <= N + 1; ++j)
    for (int v = j; v <= N + 2; ++v) m = std::max(m, pi(j, v));
  for (double cu : costs.idleCost) m = std::max(m, cu);
  return m + costs.travelCost;
}

WdhrasModel build_wdhras(const Instance& inst, const WassersteinAmbiguity& amb,
                         const WdhrasOptions& opts) {
  check_ambiguity(inst, amb);
  const int N = inst.N;
  const int R = static_cast<int>(amb.samples.size());
  const double lam = inst.costs.travelCost;
  const double invR = 1.0 / R;
  const PiTable pi = pi_table(inst.costs, N);
  const double rhoMax = rho_upper_bound(inst.costs, N);

  WdhrasModel out;
  LinearModel& m = out.model;
  out.fs = first_stage_blocks(m, inst);
  const FirstStageVars& fs = out.fs;
  const TauVars tau = tau_linearization(m, fs, N);
  if (opts.symmetryBreaking) symmetry_breaking(m, fs, N);

  auto x = [&](int i, int j) { return fs.x[static_cast<size_t>(i)][static_cast<size_t>(j)]; };
  const int rhoW = m.add_var("rhoW", 0.0, rhoMax);

  LinExpr obj;
  obj.add(rhoW, amb.radius);

  // epigraph variable dominating the candidates kappa*lo - rho(xhat-lo),
  // kappa*xhat, kappa*hi - rho(hi-xhat); the middle one is a constant and
  // becomes the variable's lower bound
  auto add_u = [&](const std::string& name, double kappa, double lo, double hi,
                   double xhat) {
    const double lb = kappa * xhat;
    const double ub = std::max({kappa * lo, kappa * xhat, kappa * hi});
    const int u = m.add_var(name, lb, ub);
    if (xhat > lo) {
      LinExpr e;
      e.add(u, 1.0).add(rhoW, xhat - lo);
      m.add_constr(name + "_lo", e, ConSense::GE, kappa * lo);
    }
    if (hi > xhat) {
      LinExpr e;
      e.add(u, 1.0).add(rhoW, hi - xhat);
      m.add_constr(name + "_hi", e, ConSense::GE, kappa * hi);
    }
    return u;
  };
  auto add_product = [&](const std::string& name, int u, int bin) {
    const double lo = m.vars()[static_cast<size_t>(u)].lb;
    const double hi = m.vars()[static_cast<size_t>(u)].ub;
    const int p = m.add_var(name, std::min(0.0, lo), std::max(0.0, hi));
    mccormick_bin_cont(m, p, bin, u, lo, hi, name + "mc");
    return p;
  };

  for (int r = 1; r <= R; ++r) {
    const Scenario& sc = amb.samples[static_cast<size_t>(r - 1)];
    auto that = [&](int i, int ip) {
      return sc.travel[static_cast<size_t>(i)][static_cast<size_t>(ip)];
    };
    auto tlo = [&](int i, int ip) {
      return inst.travelLower[static_cast<size_t>(i)][static_cast<size_t>(ip)];
    };
    auto tup = [&](int i, int ip) {
      return inst.travelUpper[static_cast<size_t>(i)][static_cast<size_t>(ip)];
    };

    std::vector<int> beta(static_cast<size_t>(N + 3), -1);
    for (int j = 1; j <= N + 2; ++j)
      beta[static_cast<size_t>(j)] =
          m.add_var("beta" + sub({r, j}), j == N + 2 ? 0.0 : -kInf, kInf);

    // return leg: kappa = lambda, lower candidate dominated
    for (int i = 1; i <= N; ++i) {
      const int u = add_u("u" + sub({r, i, 0}), lam, tlo(i, 0), tup(i, 0), that(i, 0));
      const int p = add_product("psi" + sub({r, i, 0}), u, x(i, N));
      obj.add(p, invR);
    }
    // depot-out leg at position 1: kappa = pi_{1,v} + lambda
    std::vector<int> sigma(static_cast<size_t>((N + 1) * (N + 3)), -1);
    auto sigmaAt = [&](int i, int v) -> int& {
      return sigma[static_cast<size_t>(i * (N + 3) + v)];
    };
    for (int i = 1; i <= N; ++i)
      for (int v = 1; v <= N + 2; ++v) {
        const int u = add_u("u" + sub({r, 0, i, 1, v}), pi(1, v) + lam, tlo(0, i),
                            tup(0, i), that(0, i));
        sigmaAt(i, v) = add_product("sigma" + sub({r, 0, i, 1, v}), u, x(i, 1));
      }
    // inter-customer leg into position j: kappa = pi_{j,v} + lambda
    auto midIndex = [&](int i, int ip, int j, int v) {
      return static_cast<size_t>(((i * (N + 1) + ip) * (N + 1) + j) * (N + 3) + v);
    };
    std::vector<int> phi(static_cast<size_t>((N + 1) * (N + 1) * (N + 1) * (N + 3)), -1);
    for (int i = 1; i <= N; ++i)
      for (int ip = 1; ip <= N; ++ip) {
        if (ip == i) continue;
        for (int j = 2; j <= N; ++j)
          for (int v = j; v <= N + 2; ++v) {
            const int u = add_u("u" + sub({r, i, ip, j, v}), pi(j, v) + lam, tlo(i, ip),
                                tup(i, ip), that(i, ip));
            phi[midIndex(i, ip, j, v)] =
                add_product("phi" + sub({r, i, ip, j, v}), u, tau(i, ip, j));
          }
      }
    // service at position j-1: kappa = pi_{j,v}
    auto dIndex = [&](int i, int j, int v) {
      return static_cast<size_t>((i * (N + 2) + j) * (N + 3) + v);
    };
    std::vector<int> zeta(static_cast<size_t>((N + 1) * (N + 2) * (N + 3)), -1);
    for (int i = 1; i <= N; ++i)
      for (int j = 2; j <= N + 1; ++j)
        for (int v = j; v <= N + 2; ++v) {
          const int u = add_u("nu" + sub({r, i, j, v}), pi(j, v),
                              inst.serviceLower[static_cast<size_t>(i - 1)],
                              inst.serviceUpper[static_cast<size_t>(i - 1)],
                              sc.service[static_cast<size_t>(i - 1)]);
          zeta[dIndex(i, j, v)] = add_product("zeta" + sub({r, i, j, v}), u, x(i, j - 1));
        }

    // beta cascade over the intervals [k, v] of [N+2]
    for (int k = 1; k <= N + 1; ++k)
      for (int v = (k == 1 ? 1 : k); v <= N + 2; ++v) {
        LinExpr e;
        double rhs = 0.0;
        for (int j = k; j <= v; ++j) e.add(beta[static_cast<size_t>(j)], 1.0);
        if (k == 1) {
          e.add(fs.a[1], pi(1, v));
          for (int i = 1; i <= N; ++i) e.add(sigmaAt(i, v), -1.0);
        }
        for (int j = std::max(k, 2); j <= std::min(v, N + 1); ++j) {
          e.add(fs.a[static_cast<size_t>(j - 1)], -pi(j, v));
          if (j <= N)
            e.add(fs.a[static_cast<size_t>(j)], pi(j, v));
          else
            rhs -= inst.L * pi(j, v);
          for (int i = 1; i <= N; ++i) e.add(zeta[dIndex(i, j, v)], -1.0);
          if (j <= N)
            for (int i = 1; i <= N; ++i)
              for (int ip = 1; ip <= N; ++ip)
                if (ip != i) e.add(phi[midIndex(i, ip, j, v)], -1.0);
        }
        m.add_constr("cas" + sub({r, k, v}), e, ConSense::GE, rhs);
      }

    for (int j = 1; j <= N + 2; ++j) obj.add(beta[static_cast<size_t>(j)], invR);
  }

  m.set_objective(obj);
  return out;
}

double wdhras_worstcase(const FirstStageDecision& dec, const Instance& inst,
                        const WassersteinAmbiguity& amb, const SolveOptions& sopts,
                        const WdhrasOptions& opts) {
  WdhrasModel built = build_wdhras(inst, amb, opts);
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
    throw std::runtime_error("wdhras_worstcase: solve ended with status " +
                             std::string(to_string(res.status)));
  return res.objective;
}

double g_r_value(double rhoW, const FirstStageDecision& dec, const Scenario& sample,
                 const Instance& inst) {
  if (rhoW < 0.0) throw std::invalid_argument("g_r_value: negative multiplier");
  const int N = inst.N;
  const double lam = inst.costs.travelCost;
  const std::vector<int> route = route_of(dec);
  const dvec& a = dec.appointments;

  double best = -kInf;
  // y below is 0-based: y[j-1] carries the dual coordinate of position j
  for_each_dual_extreme_point(inst.costs, N, [&](const DualPartition&, const dvec& y) {
    // appointment / horizon terms do not depend on the random vector
    double val = -a[0] * y[0];
    for (int j = 2; j <= N; ++j)
      val += (a[static_cast<size_t>(j - 2)] - a[static_cast<size_t>(j - 1)]) *
             y[static_cast<size_t>(j - 1)];
    val += (a[static_cast<size_t>(N - 1)] - inst.L) * y[static_cast<size_t>(N)];

    const int s1 = route[0];
    val += coord_sup(y[0] + lam, inst.travelLower[0][static_cast<size_t>(s1)],
                     inst.travelUpper[0][static_cast<size_t>(s1)],
                     sample.travel[0][static_cast<size_t>(s1)], rhoW);
    for (int p = 2; p <= N; ++p) {
      const int from = route[static_cast<size_t>(p - 2)];
      const int to = route[static_cast<size_t>(p - 1)];
      val += coord_sup(y[static_cast<size_t>(p - 1)] + lam,
                       inst.travelLower[static_cast<size_t>(from)][static_cast<size_t>(to)],
                       inst.travelUpper[static_cast<size_t>(from)][static_cast<size_t>(to)],
                       sample.travel[static_cast<size_t>(from)][static_cast<size_t>(to)], rhoW);
    }
    for (int p = 1; p <= N; ++p) {
      const int i = route[static_cast<size_t>(p - 1)];
      val += coord_sup(y[static_cast<size_t>(p)], inst.serviceLower[static_cast<size_t>(i - 1)],
                       inst.serviceUpper[static_cast<size_t>(i - 1)],
                       sample.service[static_cast<size_t>(i - 1)], rhoW);
    }
    const int sN = route[static_cast<size_t>(N - 1)];
    val += coord_sup(lam, inst.travelLower[static_cast<size_t>(sN)][0],
                     inst.travelUpper[static_cast<size_t>(sN)][0],
                     sample.travel[static_cast<size_t>(sN)][0], rhoW);
    best = std::max(best, val);
  });
  return best;
}

double wasserstein_oracle(const FirstStageDecision& dec, const Instance& inst,
                          const WassersteinAmbiguity& amb) {
  check_ambiguity(inst, amb);
  const double invR = 1.0 / static_cast<double>(amb.samples.size());
  auto h = [&](double rho) {
    double s = amb.radius * rho;
    for (const Scenario& sc : amb.samples) s += invR * g_r_value(rho, dec, sc, inst);
    return s;
  };
  double lo = 0.0, hi = rho_upper_bound(inst.costs, inst.N);
  const double invphi = (std::sqrt(5.0) - 1.0) / 2.0;
  double c = hi - invphi * (hi - lo);
  double d = lo + invphi * (hi - lo);
  double fc = h(c), fd = h(d);
  while (hi - lo > 1e-7) {
    if (fc < fd) {
      hi = d;
      d = c;
      fd = fc;
      c = hi - invphi * (hi - lo);
      fc = h(c);
    } else {
      lo = c;
      c = d;
      fc = fd;
      d = lo + invphi * (hi - lo);
      fd = h(d);
    }
  }
  return std::min({h(0.5 * (lo + hi)), fc, fd});
}

}  // namespace hras
