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

#ifndef FUNCGAME_STRATEGY_H_
#define FUNCGAME_STRATEGY_H_

#include <algorithm>
#include <cmath>
#include <functional>
#include <span>
#include <sstream>
#include <vector>

#include "funcgame/error.h"
#include "funcgame/games.h"

namespace funcgame {

inline constexpr int kDefaultNodes = 257;

// A strategy function of one player, f(x_opp) -> x_own, sampled at uniformly
// spaced opponent actions. Piecewise linear between nodes and clamped to the
// end values outside the domain.
class GridStrategy {
 public:
  // `domain` is the opponent's action interval, `range` the owner's.
  GridStrategy(Player owner, Interval domain, Interval range,
               std::vector<double> values);

  static GridStrategy Constant(Player owner, Interval domain, Interval range,
                               int n_nodes, double value);
  static GridStrategy Sample(Player owner, Interval domain, Interval range,
                             int n_nodes,
                             const std::function<double(double)>& f);
  // Grid for `owner` in `kernel` filled with a constant own action.
  static GridStrategy Constant(const GameKernel& kernel, Player owner,
                               int n_nodes, double value);

  Player owner() const { return owner_; }
  const Interval& domain() const { return domain_; }
  const Interval& range() const { return range_; }
  int size() const { return static_cast<int>(values_.size()); }
  double spacing() const { return spacing_; }
  double node(int i) const;
  double value(int i) const { return values_[i]; }
  std::span<const double> values() const { return values_; }

  double Eval(double x_opp) const;
  double operator()(double x_opp) const { return Eval(x_opp); }

 private:
  Player owner_;
  Interval domain_;
  Interval range_;
  std::vector<double> values_;
  double spacing_;
};

// Largest node-wise difference. Both grids must share owner and size.
double SupDistance(const GridStrategy& a, const GridStrategy& b);

// Local linear model of a strategy function near an anchor point.
struct LocalLinearFit {
  double anchor_opp = 0.0;  // opponent action at the anchor
  double anchor_own = 0.0;  // f(anchor_opp)
  double slope = 0.0;       // d x_own / d x_opp at the anchor
  double residual = 0.0;    // RMS residual of the straight-line fit
  int first_node = 0;
  int last_node = 0;
};

inline constexpr int kDefaultFitWindow = 5;

// Least-squares fit over `window_nodes` consecutive nodes centred as closely
// as the domain allows on `at`. The slope is the straight-line slope plus the
// quadratic-fit curvature correction for the offset between `at` and the
// window centre, which makes it the local derivative at `at`.
LocalLinearFit LocalFit(const GridStrategy& f, double at,
                        int window_nodes = kDefaultFitWindow);

struct ArgmaxResult {
  double x = 0.0;
  double value = 0.0;
};

inline constexpr int kArgmaxCoarseSamples = 64;
inline constexpr double kArgmaxRelTol = 1e-8;
inline constexpr double kArgmaxTieTol = 1e-12;

namespace internal {

[[noreturn]] inline void ThrowNan(double x) {
  std::ostringstream os;
  os.precision(17);
  os << "objective is NaN at x = " << x;
  throw EvaluationError(os.str(), x);
}

template <class F>
double CheckedEval(F& objective, double x) {
  const double v = objective(x);
  if (std::isnan(v)) ThrowNan(x);
  return v;
}

// Prefers the larger value; exact ties go to the smaller action.
inline bool Better(const ArgmaxResult& a, const ArgmaxResult& b) {
  return a.value > b.value || (a.value == b.value && a.x < b.x);
}

template <class F>
ArgmaxResult GoldenSection(F& objective, double a, double b, double tol) {
  constexpr double kInvPhi = 0.6180339887498949;
  double c = b - kInvPhi * (b - a);
  double d = a + kInvPhi * (b - a);
  double fc = CheckedEval(objective, c);
  double fd = CheckedEval(objective, d);
  ArgmaxResult best{c, fc};
  if (Better({d, fd}, best)) best = {d, fd};
  while (b - a > tol) {
    if (fc >= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - kInvPhi * (b - a);
      fc = CheckedEval(objective, c);
      if (Better({c, fc}, best)) best = {c, fc};
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + kInvPhi * (b - a);
      fd = CheckedEval(objective, d);
      if (Better({d, fd}, best)) best = {d, fd};
    }
  }
  return best;
}

}  // namespace internal

// Global maximization of a scalar objective over a closed interval: a coarse
// scan over `coarse_samples` equally spaced points, then golden-section
// refinement of the best local maxima of the scan (at most four brackets) to
// |interval| * 1e-8. Maxima at a bound are returned exactly at the bound.
// Candidates within 1e-12 in value resolve to the smaller action.
template <class F>
ArgmaxResult Argmax1d(F&& objective, Interval interval,
                      int coarse_samples = kArgmaxCoarseSamples) {
  const int m = std::max(coarse_samples, 3);
  const double lo = interval.lo, hi = interval.hi;
  const double step = (hi - lo) / (m - 1);
  std::vector<double> xs(m), vs(m);
  for (int k = 0; k < m; ++k) {
    xs[k] = k == m - 1 ? hi : lo + k * step;
    vs[k] = internal::CheckedEval(objective, xs[k]);
  }

  // Local maxima of the scan; a plateau contributes its first sample only.
  std::vector<int> peaks;
  for (int k = 0; k < m; ++k) {
    const bool left = k == 0 || vs[k] > vs[k - 1];
    const bool right = k == m - 1 || vs[k] >= vs[k + 1];
    if (left && right) peaks.push_back(k);
  }
  constexpr std::size_t kMaxBrackets = 4;
  std::stable_sort(peaks.begin(), peaks.end(),
                   [&](int a, int b) { return vs[a] > vs[b]; });
  if (peaks.size() > kMaxBrackets) peaks.resize(kMaxBrackets);

  const double tol = (hi - lo) * kArgmaxRelTol;
  std::vector<ArgmaxResult> candidates;
  for (int k : peaks) {
    const double a = k == 0 ? lo : xs[k - 1];
    const double b = k == m - 1 ? hi : xs[k + 1];
    ArgmaxResult local = internal::GoldenSection(objective, a, b, tol);
    const ArgmaxResult sample{xs[k], vs[k]};
    if (internal::Better(sample, local)) local = sample;
    candidates.push_back(local);
  }

  ArgmaxResult best = candidates.front();
  for (const ArgmaxResult& c : candidates) {
    if (c.value > best.value + kArgmaxTieTol) {
      best = c;
    } else if (std::abs(c.value - best.value) <= kArgmaxTieTol &&
               c.x < best.x) {
      best = c;
    }
  }
  return best;
}

}  // namespace funcgame

#endif  // FUNCGAME_STRATEGY_H_
