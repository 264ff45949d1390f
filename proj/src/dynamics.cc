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

#include "funcgame/dynamics.h"

#include <cmath>
#include <limits>
#include <string>

#include "funcgame/error.h"
#include "funcgame/responses.h"

namespace funcgame {
namespace {

constexpr int kScanPerCell = 4;
constexpr double kExactZero = 1e-13;
constexpr int kBisectionIters = 200;
constexpr int kPrincipalIters = 5000;

}  // namespace

void Validate(const PerceptionModel& pm) {
  auto ok = [](double e) { return e >= 0.0 && e <= 1.0; };
  if (!ok(pm.eps1) || !ok(pm.eps2)) {
    throw ConfigError("learning degrees must lie in [0, 1]");
  }
}

void Validate(const DynamicsConfig& cfg) {
  if (!(cfg.tol > 0.0)) throw ConfigError("dynamics: tol must be > 0");
  if (cfg.max_iters < 1) throw ConfigError("dynamics: max_iters must be >= 1");
  if (cfg.n_nodes < 3) throw ConfigError("dynamics: n_nodes must be >= 3");
}

StrategyPair InitialStrategies(const GameKernel& kernel,
                               const DynamicsConfig& cfg) {
  if (cfg.warm_start) return *cfg.warm_start;
  if (cfg.init.kind == InitialPair::Kind::kConstant) {
    return {GridStrategy::Constant(kernel, Player::kOne, cfg.n_nodes,
                                   cfg.init.c1),
            GridStrategy::Constant(kernel, Player::kTwo, cfg.n_nodes,
                                   cfg.init.c2)};
  }
  return {BestResponseGrid(kernel, Player::kOne, cfg.n_nodes),
          BestResponseGrid(kernel, Player::kTwo, cfg.n_nodes)};
}

GridStrategy Respond(const GameKernel& kernel, Player player,
                     const GridStrategy& opp, double eps, int n_nodes) {
  if (opp.owner() != Other(player)) {
    throw ConfigError("respond: opponent grid has the wrong owner");
  }
  const Interval& own_iv = kernel.box().of(player);
  const Interval& opp_iv = kernel.box().of(Other(player));
  const double keep = 1.0 - eps;

  std::vector<double> values(n_nodes);
  const double h = opp_iv.width() / (n_nodes - 1);
  for (int j = 0; j < n_nodes; ++j) {
    const double x_opp = j == n_nodes - 1 ? opp_iv.hi : opp_iv.lo + j * h;
    auto objective = [&](double x) {
      const double perceived = opp_iv.clamp(eps * opp.Eval(x) + keep * x_opp);
      return kernel.Utility(player, x, perceived);
    };
    try {
      values[j] = Argmax1d(objective, own_iv).x;
    } catch (const EvaluationError& e) {
      throw EvaluationError("player " + std::to_string(Index(player) + 1) +
                                " update at node " + std::to_string(j) + ": " +
                                e.what(),
                            e.point());
    }
  }
  return GridStrategy(player, opp_iv, own_iv, std::move(values));
}

StrategyPair Step(const GameKernel& kernel, const StrategyPair& pair,
                  const PerceptionModel& pm) {
  return {Respond(kernel, Player::kOne, pair.f2, pm.eps1, pair.f1.size()),
          Respond(kernel, Player::kTwo, pair.f1, pm.eps2, pair.f2.size())};
}

std::vector<ActionPoint> FindCrossings(const GridStrategy& f1,
                                       const GridStrategy& f2) {
  const Interval iv = f2.domain();  // player 1's actions
  auto g = [&](double x1) { return f1.Eval(f2.Eval(x1)) - x1; };

  const int n = kScanPerCell * (f2.size() - 1);
  std::vector<double> roots;
  auto add = [&roots](double x) {
    if (roots.empty() || std::abs(x - roots.back()) > 1e-9) {
      roots.push_back(x);
    }
  };

  double prev_x = iv.lo;
  double prev_g = g(prev_x);
  if (std::abs(prev_g) <= kExactZero) add(prev_x);
  for (int k = 1; k <= n; ++k) {
    const double x = k == n ? iv.hi : iv.lo + iv.width() * k / n;
    const double gx = g(x);
    if (std::abs(gx) <= kExactZero) {
      add(x);
    } else if (std::abs(prev_g) > kExactZero && (prev_g < 0) != (gx < 0)) {
      double a = prev_x, b = x, ga = prev_g;
      for (int it = 0; it < kBisectionIters && b - a > 1e-15; ++it) {
        const double m = 0.5 * (a + b);
        const double gm = g(m);
        if (gm == 0.0) {
          a = b = m;
          break;
        }
        if ((gm < 0) == (ga < 0)) {
          a = m;
          ga = gm;
        } else {
          b = m;
        }
      }
      add(0.5 * (a + b));
    }
    prev_x = x;
    prev_g = gx;
  }

  std::vector<ActionPoint> out;
  out.reserve(roots.size());
  for (double x1 : roots) out.push_back({x1, f2.Eval(x1)});
  return out;
}

std::optional<ActionPoint> PrincipalCrossing(
    const GridStrategy& f1, const GridStrategy& f2,
    const std::vector<ActionPoint>& crossings) {
  if (crossings.empty()) return std::nullopt;
  if (crossings.size() == 1) return crossings.front();
  double x1 = f2.domain().center();
  double x2 = f1.domain().center();
  for (int it = 0; it < kPrincipalIters; ++it) {
    const double n1 = f1.Eval(x2), n2 = f2.Eval(x1);
    const bool done = n1 == x1 && n2 == x2;
    x1 = n1;
    x2 = n2;
    if (done) break;
  }
  const ActionPoint* best = &crossings.front();
  double best_d = std::numeric_limits<double>::infinity();
  for (const ActionPoint& c : crossings) {
    const double d = std::hypot(c.x1 - x1, c.x2 - x2);
    if (d < best_d) {
      best_d = d;
      best = &c;
    }
  }
  return *best;
}

EquilibriumReport Analyze(const GameKernel& kernel, const StrategyPair& pair,
                          const PerceptionModel& pm) {
  EquilibriumReport rep;
  rep.eps1 = pm.eps1;
  rep.eps2 = pm.eps2;
  rep.label = LabelFor(pm.eps1, pm.eps2);
  rep.method = "simulate";
  rep.crossings = FindCrossings(pair.f1, pair.f2);
  const auto principal = PrincipalCrossing(pair.f1, pair.f2, rep.crossings);
  if (!principal) {
    rep.converged = false;
    rep.crossing = {std::numeric_limits<double>::quiet_NaN(),
                    std::numeric_limits<double>::quiet_NaN()};
    rep.u1 = rep.u2 = std::numeric_limits<double>::quiet_NaN();
    return rep;
  }
  rep.crossing = *principal;
  rep.a1 = LocalFit(pair.f1, rep.crossing.x2).slope;
  rep.a2 = LocalFit(pair.f2, rep.crossing.x1).slope;
  const Payoffs u = kernel.Evaluate(rep.crossing.x1, rep.crossing.x2);
  rep.u1 = u.u1;
  rep.u2 = u.u2;
  return rep;
}

DynamicsResult Run(const GameKernel& kernel, const PerceptionModel& pm,
                   const DynamicsConfig& cfg, const StepObserver& observer) {
  Validate(pm);
  Validate(cfg);
  StrategyPair pair = InitialStrategies(kernel, cfg);
  double residual = std::numeric_limits<double>::infinity();
  int iters = 0;
  bool converged = false;
  while (iters < cfg.max_iters) {
    StrategyPair next = Step(kernel, pair, pm);
    ++iters;
    residual = std::max(SupDistance(next.f1, pair.f1),
                        SupDistance(next.f2, pair.f2));
    pair = std::move(next);
    if (observer) observer(iters, pair);
    if (residual < cfg.tol) {
      converged = true;
      break;
    }
  }
  EquilibriumReport rep = Analyze(kernel, pair, pm);
  rep.iters = iters;
  rep.residual = residual;
  rep.converged = converged && rep.converged;
  return {std::move(pair), std::move(rep)};
}

}  // namespace funcgame
