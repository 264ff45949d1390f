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

// Functional dynamics of strategy functions. Each player re-optimizes its
// whole strategy function against a perceived opponent action that mixes the
// opponent's current strategy function (weight eps) with the opponent's
// actual action (weight 1 - eps):
//
//   f1'(x2) = argmax_x1 u1(x1, eps1 f2(x1) + (1 - eps1) x2)
//   f2'(x1) = argmax_x2 u2(eps2 f1(x2) + (1 - eps2) x1, x2)
//
// Both players update synchronously from the previous pair. A pair that maps
// to itself is an equilibrium state; its crossing point and local slopes are
// summarized in an EquilibriumReport.

#ifndef FUNCGAME_DYNAMICS_H_
#define FUNCGAME_DYNAMICS_H_

#include <functional>
#include <optional>
#include <vector>

#include "funcgame/games.h"
#include "funcgame/report.h"
#include "funcgame/strategy.h"

namespace funcgame {

// Learning degrees. eps_i = 0 is a pure best responder, eps_i = 1 reads the
// opponent's strategy function exactly.
struct PerceptionModel {
  double eps1 = 0.0;
  double eps2 = 0.0;

  double of(Player p) const { return p == Player::kOne ? eps1 : eps2; }
};

void Validate(const PerceptionModel& pm);

struct StrategyPair {
  GridStrategy f1;  // x1 as a function of x2
  GridStrategy f2;  // x2 as a function of x1
};

struct InitialPair {
  enum class Kind { kBestResponse, kConstant };
  Kind kind = Kind::kBestResponse;
  double c1 = 0.0;  // used by kConstant
  double c2 = 0.0;
};

inline constexpr int kDefaultMaxIters = 500;
inline constexpr double kDefaultTol = 1e-6;

struct DynamicsConfig {
  int max_iters = kDefaultMaxIters;
  double tol = kDefaultTol;
  int n_nodes = kDefaultNodes;
  InitialPair init;
  // Start from this pair instead of `init` when set.
  std::optional<StrategyPair> warm_start;
};

void Validate(const DynamicsConfig& cfg);

StrategyPair InitialStrategies(const GameKernel& kernel,
                               const DynamicsConfig& cfg);

// One player's update against the opponent's current grid, sampled on an
// n_nodes grid over the opponent's interval.
GridStrategy Respond(const GameKernel& kernel, Player player,
                     const GridStrategy& opp, double eps, int n_nodes);

// Synchronous update of both players.
StrategyPair Step(const GameKernel& kernel, const StrategyPair& pair,
                  const PerceptionModel& pm);

// All solutions of x1 = f1(f2(x1)) on player 1's interval, ascending in x1,
// via a sign-change scan of f1(f2(x1)) - x1 on four points per grid cell
// followed by bisection.
std::vector<ActionPoint> FindCrossings(const GridStrategy& f1,
                                       const GridStrategy& f2);

// The crossing nearest to where (x1, x2) <- (f1(x2), f2(x1)) settles when
// started from the box centre. Empty if there are no crossings.
std::optional<ActionPoint> PrincipalCrossing(
    const GridStrategy& f1, const GridStrategy& f2,
    const std::vector<ActionPoint>& crossings);

// Crossing, slopes and payoffs of a strategy pair. `converged`, `iters` and
// `residual` are left for the caller.
EquilibriumReport Analyze(const GameKernel& kernel, const StrategyPair& pair,
                          const PerceptionModel& pm);

struct DynamicsResult {
  StrategyPair pair;
  EquilibriumReport report;
};

// Called after every step with the 1-based iteration count and the new pair.
using StepObserver = std::function<void(int iter, const StrategyPair& pair)>;

// Iterates Step until successive pairs differ by less than cfg.tol in the sup
// norm or cfg.max_iters is reached. Non-convergence is reported through
// report.converged, never thrown.
DynamicsResult Run(const GameKernel& kernel, const PerceptionModel& pm,
                   const DynamicsConfig& cfg,
                   const StepObserver& observer = nullptr);

}  // namespace funcgame

#endif  // FUNCGAME_DYNAMICS_H_
