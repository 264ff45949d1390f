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

#ifndef FUNCGAME_RESPONSES_H_
#define FUNCGAME_RESPONSES_H_

#include "funcgame/games.h"
#include "funcgame/report.h"
#include "funcgame/strategy.h"

namespace funcgame {

// Action maximizing the player's payoff with the opponent's action held fixed.
double BestResponse(const GameKernel& kernel, Player player, double x_opp);

// BestResponse at every node of the player's grid.
GridStrategy BestResponseGrid(const GameKernel& kernel, Player player,
                              int n_nodes = kDefaultNodes);

// Maximizes u_player(x, opp(x)) over the player's own action x, i.e. plans
// against the opponent's whole strategy function. The result is one action,
// independent of the opponent's actual move. `value` is the optimum payoff.
ArgmaxResult LearningResponseOptimum(const GameKernel& kernel, Player player,
                                     const GridStrategy& opp);
double LearningResponse(const GameKernel& kernel, Player player,
                        const GridStrategy& opp);

// Exact equilibria of the three built-in games. Supports BB, LB, BL and LL
// (LL shares the BB actions with flat strategy functions). Slopes are NaN when
// the crossing sits on a kink of a response function.
// Throws UnsupportedError for custom kernels or a kMixed label.
EquilibriumReport ClosedFormCatalog(const GameKernel& kernel, Label label);

}  // namespace funcgame

#endif  // FUNCGAME_RESPONSES_H_
