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

#include "funcgame/oracle.h"

#include <cmath>

#include "funcgame/error.h"

namespace funcgame {
namespace {

double Sample(const Interval& iv, int k, int n) {
  if (k == n) return iv.hi;
  return iv.lo + (iv.width() * k) / n;
}

void RequireSamples(int n) {
  if (n < kMinOracleSamples) {
    throw ConfigError("oracle: at least 10000 samples required");
  }
}

}  // namespace

double BruteArgmax(const std::function<double(double)>& objective,
                   const Interval& iv, int n) {
  RequireSamples(n);
  double best_x = iv.lo;
  double best_v = objective(iv.lo);
  for (int k = 1; k <= n; ++k) {
    const double x = Sample(iv, k, n);
    const double v = objective(x);
    if (v > best_v) {
      best_v = v;
      best_x = x;
    }
  }
  return best_x;
}

double BruteBestResponse(const GameKernel& kernel, Player player,
                         double x_opp, int n) {
  return BruteArgmax(
      [&](double x) { return kernel.Utility(player, x, x_opp); },
      kernel.box().of(player), n);
}

std::vector<ActionPoint> BruteCrossings(
    const std::function<double(double)>& f1,
    const std::function<double(double)>& f2, const Interval& domain, int n) {
  RequireSamples(n);
  auto g = [&](double x) { return f1(f2(x)) - x; };
  std::vector<double> roots;
  auto push = [&roots](double x) {
    if (roots.empty() || x - roots.back() > 1e-9) roots.push_back(x);
  };

  double x_prev = Sample(domain, 0, n);
  double g_prev = g(x_prev);
  if (g_prev == 0.0) push(x_prev);
  for (int k = 1; k <= n; ++k) {
    const double x = Sample(domain, k, n);
    const double gx = g(x);
    if (gx == 0.0) {
      push(x);
    } else if (g_prev != 0.0 && std::signbit(gx) != std::signbit(g_prev)) {
      double lo = x_prev, hi = x;
      const bool lo_negative = std::signbit(g_prev);
      for (int it = 0; it < 100; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break;
        const double gm = g(mid);
        if (gm == 0.0) {
          lo = hi = mid;
          break;
        }
        if (std::signbit(gm) == lo_negative) {
          lo = mid;
        } else {
          hi = mid;
        }
      }
      push(0.5 * (lo + hi));
    }
    x_prev = x;
    g_prev = gx;
  }

  std::vector<ActionPoint> out;
  for (double x1 : roots) out.push_back({x1, f2(x1)});
  return out;
}

std::vector<ActionPoint> BruteCrossings(const GridStrategy& f1,
                                        const GridStrategy& f2, int n) {
  return BruteCrossings([&](double x) { return f1.Eval(x); },
                        [&](double x) { return f2.Eval(x); }, f2.domain(), n);
}

}  // namespace funcgame
