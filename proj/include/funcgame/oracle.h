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

// Slow reference implementations for cross-checking the solvers. Nothing in
// here calls Argmax1d or FindCrossings.

#ifndef FUNCGAME_ORACLE_H_
#define FUNCGAME_ORACLE_H_

#include <functional>
#include <vector>

#include "funcgame/games.h"
#include "funcgame/report.h"
#include "funcgame/strategy.h"

namespace funcgame {

inline constexpr int kMinOracleSamples = 10000;

// Plain scan over n + 1 evenly spaced actions; the first maximum wins.
double BruteBestResponse(const GameKernel& kernel, Player player,
                         double x_opp, int n = 1000000);

// Same scan for an arbitrary objective.
double BruteArgmax(const std::function<double(double)>& objective,
                   const Interval& iv, int n = 1000000);

// Roots of f1(f2(x1)) - x1 on `domain` (player 1's interval) from a scan of
// n + 1 points with bisection on each sign change. Scan points where the
// function is exactly zero are roots as they stand.
std::vector<ActionPoint> BruteCrossings(
    const std::function<double(double)>& f1,
    const std::function<double(double)>& f2, const Interval& domain,
    int n = 100000);

std::vector<ActionPoint> BruteCrossings(const GridStrategy& f1,
                                        const GridStrategy& f2,
                                        int n = 100000);

}  // namespace funcgame

#endif  // FUNCGAME_ORACLE_H_
