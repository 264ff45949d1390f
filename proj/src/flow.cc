// Copyright 2026 The funcgame Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "funcgame/flow.h"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "funcgame/equilibria.h"
#include "funcgame/error.h"
#include "funcgame/strategy.h"

namespace funcgame {
namespace {

constexpr int kCrossingIters = 200;

std::string EpsText(double e1, double e2) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "(%.6g, %.6g)", e1, e2);
  return buf;
}

long Key(double eps) { return std::lround(eps / kEpsQuantum); }

// Opponent's equilibrium function as seen by `player`, mapping the player's
// own action to the opponent's action.
std::function<double(double)> OpponentFunction(const GameKernel& kernel,
                                               const FixedPointState& state,
                                               Player player) {
  const Interval opp_iv = kernel.box().of(Other(player));
  if (state.pair) {
    const GridStrategy& g =
        player == Player::kOne ? state.pair->f2 : state.pair->f1;
    return [g](double x) { return g.Eval(x); };
  }
  // The system solvers describe each function by its tangent line at the
  // crossing.
  const EquilibriumReport& rep = state.report;
  const double own0 = player == Player::kOne ? rep.crossing.x1 : rep.crossing.x2;
  const double opp0 = player == Player::kOne ? rep.crossing.x2 : rep.crossing.x1;
  const double slope = player == Player::kOne ? rep.a2 : rep.a1;
  return [=](double x) { return opp_iv.clamp(opp0 + slope * (x - own0)); };
}

double ClampUnit(double e) { return std::clamp(e, 0.0, 1.0); }

// Probe points for a derivative at e on [0, 1].
std::pair<double, double> Probes(double e, double h) {
  if (e - h < 0.0) return {e, e + h};
  if (e + h > 1.0) return {e - h, e};
  return {e - h, e + h};
}

}  // namespace

std::string GradientModeName(GradientMode m) {
  return m == GradientMode::kTotal ? "total" : "frozen";
}

GradientMode ParseGradientMode(const std::string& name) {
  if (name == "frozen") return GradientMode::kFrozenOpponent;
  if (name == "total") return GradientMode::kTotal;
  throw ConfigError("unknown gradient mode '" + name +
                    "' (expected frozen or total)");
}

std::string InnerSolverName(InnerSolver s) {
  return s == InnerSolver::kSimulate ? "simulate" : "system";
}

InnerSolver ParseInnerSolver(const std::string& name) {
  if (name == "system") return InnerSolver::kSystem;
  if (name == "simulate") return InnerSolver::kSimulate;
  throw ConfigError("unknown inner solver '" + name +
                    "' (expected system or simulate)");
}

void Validate(const FlowConfig& cfg) {
  if (!(cfg.s1 > 0) || !(cfg.s2 > 0)) {
    throw ConfigError("flow: learning speeds s1 and s2 must be > 0");
  }
  if (!(cfg.dt > 0)) throw ConfigError("flow: dt must be > 0");
  if (!(cfg.t_max > 0)) throw ConfigError("flow: t_max must be > 0");
  if (!(cfg.grad_h > 0) || cfg.grad_h > 0.5) {
    throw ConfigError("flow: grad_h must lie in (0, 0.5]");
  }
  Validate(PerceptionModel{cfg.eps1_0, cfg.eps2_0});
  Validate(cfg.dynamics);
}

double QuantizeEps(double eps) {
  return ClampUnit(static_cast<double>(Key(eps)) * kEpsQuantum);
}

EquilibriumCache::EquilibriumCache(const GameKernel& kernel,
                                   InnerSolver solver, DynamicsConfig dynamics)
    : kernel_(kernel), solver_(solver), dynamics_(std::move(dynamics)) {}

size_t EquilibriumCache::size() const {
  std::lock_guard<std::mutex> lock(mu_);
  return memo_.size();
}

std::shared_ptr<const FixedPointState> EquilibriumCache::Solve(double eps1,
                                                               double eps2) {
  const double q1 = QuantizeEps(eps1), q2 = QuantizeEps(eps2);
  const std::pair<long, long> key{Key(q1), Key(q2)};
  {
    std::lock_guard<std::mutex> lock(mu_);
    auto it = memo_.find(key);
    if (it != memo_.end()) return it->second;
  }
  auto state = std::make_shared<FixedPointState>();
  if (solver_ == InnerSolver::kSystem) {
    state->report = SystemEquilibrium(kernel_, q1, q2);
  } else {
    DynamicsResult res = Run(kernel_, {q1, q2}, dynamics_);
    if (!res.report.converged) {
      throw SolverError("functional dynamics did not converge at eps = " +
                        EpsText(q1, q2));
    }
    state->report = std::move(res.report);
    state->pair = std::move(res.pair);
  }
  std::lock_guard<std::mutex> lock(mu_);
  return memo_.emplace(key, std::move(state)).first->second;
}

Payoffs EquilibriumCache::EquilibriumPayoffs(double eps1, double eps2) {
  const auto s = Solve(eps1, eps2);
  return {s->report.u1, s->report.u2};
}

Payoffs EquilibriumPayoffs(const GameKernel& kernel, double eps1, double eps2,
                           InnerSolver solver) {
  EquilibriumCache cache(kernel, solver);
  return cache.EquilibriumPayoffs(eps1, eps2);
}

double FrozenCrossingPayoff(const GameKernel& kernel, Player player,
                            const std::function<double(double)>& opp,
                            double eps, double hint) {
  const Interval& own_iv = kernel.box().of(player);
  const Interval& opp_iv = kernel.box().of(Other(player));
  auto respond = [&](double x_opp) {
    auto objective = [&](double x) {
      return kernel.Utility(player, x,
                            opp_iv.clamp(eps * opp(x) + (1 - eps) * x_opp));
    };
    return Argmax1d(objective, own_iv).x;
  };
  double x = own_iv.clamp(hint);
  double step = 0.0;
  for (int it = 0; it < kCrossingIters; ++it) {
    const double next = respond(opp(x));
    step = std::abs(next - x);
    x = next;
    if (step <= 1e-12 * own_iv.width()) break;
  }
  if (step > 1e-6 * own_iv.width()) {
    throw SolverError("frozen crossing did not settle (last step " +
                      std::to_string(step) + ")");
  }
  return kernel.Utility(player, x, opp(x));
}

EpsGradient EpsilonGradient(EquilibriumCache& cache, double eps1, double eps2,
                            double h, GradientMode mode) {
  const double q1 = QuantizeEps(eps1), q2 = QuantizeEps(eps2);
  const auto [lo1, hi1] = Probes(q1, h);
  const auto [lo2, hi2] = Probes(q2, h);
  auto guarded = [&](double e1, double e2, auto&& fn) {
    try {
      return fn();
    } catch (const Error& e) {
      throw SolverError("gradient probe at eps = " + EpsText(e1, e2) + ": " +
                        e.what());
    }
  };

  EpsGradient g;
  if (mode == GradientMode::kTotal) {
    auto u = [&](double e1, double e2, Player p) {
      return guarded(e1, e2, [&] {
        return cache.EquilibriumPayoffs(e1, e2).of(p);
      });
    };
    g.g1 = (u(hi1, q2, Player::kOne) - u(lo1, q2, Player::kOne)) / (hi1 - lo1);
    g.g2 = (u(q1, hi2, Player::kTwo) - u(q1, lo2, Player::kTwo)) / (hi2 - lo2);
    return g;
  }

  const auto state = guarded(q1, q2, [&] { return cache.Solve(q1, q2); });
  const GameKernel& kernel = cache.kernel();
  auto frozen = [&](Player p, double e) {
    const double e1 = p == Player::kOne ? e : q1;
    const double e2 = p == Player::kOne ? q2 : e;
    return guarded(e1, e2, [&] {
      const double hint = p == Player::kOne ? state->report.crossing.x1
                                            : state->report.crossing.x2;
      return FrozenCrossingPayoff(kernel, p,
                                  OpponentFunction(kernel, *state, p), e,
                                  hint);
    });
  };
  g.g1 = (frozen(Player::kOne, hi1) - frozen(Player::kOne, lo1)) / (hi1 - lo1);
  g.g2 = (frozen(Player::kTwo, hi2) - frozen(Player::kTwo, lo2)) / (hi2 - lo2);
  return g;
}

FlowTrajectory RunFlow(const GameKernel& kernel, const FlowConfig& cfg) {
  EquilibriumCache cache(kernel, cfg.solver, cfg.dynamics);
  return RunFlow(cache, cfg);
}

FlowTrajectory RunFlow(EquilibriumCache& cache, const FlowConfig& cfg) {
  Validate(cfg);
  FlowTrajectory traj;
  double e1 = cfg.eps1_0, e2 = cfg.eps2_0;
  const long steps = std::lround(std::ceil(cfg.t_max / cfg.dt - 1e-9));
  for (long k = 0;; ++k) {
    FlowSample s;
    s.t = k * cfg.dt;
    s.eps1 = e1;
    s.eps2 = e2;
    try {
      const Payoffs u = cache.EquilibriumPayoffs(e1, e2);
      s.u1 = u.u1;
      s.u2 = u.u2;
      const EpsGradient g =
          EpsilonGradient(cache, e1, e2, cfg.grad_h, cfg.mode);
      s.g1 = g.g1;
      s.g2 = g.g2;
    } catch (const Error& e) {
      traj.error = e.what();
      return traj;
    }
    traj.samples.push_back(s);
    if (k >= steps) break;

    const double n1 = ClampUnit(e1 + cfg.dt * cfg.s1 * s.g1);
    const double n2 = ClampUnit(e2 + cfg.dt * cfg.s2 * s.g2);
    const double v = std::hypot(n1 - e1, n2 - e2) / cfg.dt;
    if (v < cfg.stationary_tol) {
      traj.stationary = true;
      break;
    }
    e1 = n1;
    e2 = n2;
  }
  return traj;
}

}  // namespace funcgame
