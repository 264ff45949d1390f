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

#include "funcgame/strategy.h"

#include <cmath>
#include <utility>

#include "funcgame/error.h"

namespace funcgame {

GridStrategy::GridStrategy(Player owner, Interval domain, Interval range,
                           std::vector<double> values)
    : owner_(owner),
      domain_(domain),
      range_(range),
      values_(std::move(values)) {
  if (values_.size() < 3) {
    throw ConfigError("grid strategy needs at least 3 nodes");
  }
  if (!(domain_.lo < domain_.hi)) {
    throw ConfigError("grid strategy domain must satisfy lo < hi");
  }
  for (double& v : values_) {
    if (std::isnan(v)) throw ConfigError("grid strategy value is NaN");
    v = range_.clamp(v);
  }
  spacing_ = domain_.width() / static_cast<double>(values_.size() - 1);
}

GridStrategy GridStrategy::Constant(Player owner, Interval domain,
                                    Interval range, int n_nodes,
                                    double value) {
  return GridStrategy(owner, domain, range,
                      std::vector<double>(std::max(n_nodes, 0), value));
}

GridStrategy GridStrategy::Sample(Player owner, Interval domain,
                                  Interval range, int n_nodes,
                                  const std::function<double(double)>& f) {
  if (n_nodes < 3) throw ConfigError("grid strategy needs at least 3 nodes");
  std::vector<double> values(n_nodes);
  const double h = domain.width() / (n_nodes - 1);
  for (int i = 0; i < n_nodes; ++i) {
    values[i] = f(i == n_nodes - 1 ? domain.hi : domain.lo + i * h);
  }
  return GridStrategy(owner, domain, range, std::move(values));
}

GridStrategy GridStrategy::Constant(const GameKernel& kernel, Player owner,
                                    int n_nodes, double value) {
  return Constant(owner, kernel.box().of(Other(owner)), kernel.box().of(owner),
                  n_nodes, value);
}

double GridStrategy::node(int i) const {
  return i == size() - 1 ? domain_.hi : domain_.lo + i * spacing_;
}

double GridStrategy::Eval(double x_opp) const {
  if (!(x_opp > domain_.lo)) return values_.front();
  if (!(x_opp < domain_.hi)) return values_.back();
  const double t = (x_opp - domain_.lo) / spacing_;
  int i = static_cast<int>(t);
  if (i >= size() - 1) i = size() - 2;
  const double w = t - i;
  if (w == 0.0) return values_[i];
  return values_[i] + w * (values_[i + 1] - values_[i]);
}

double SupDistance(const GridStrategy& a, const GridStrategy& b) {
  if (a.size() != b.size() || a.owner() != b.owner()) {
    throw ConfigError("sup distance needs grids with equal owner and size");
  }
  double d = 0.0;
  for (int i = 0; i < a.size(); ++i) {
    d = std::max(d, std::abs(a.value(i) - b.value(i)));
  }
  return d;
}

LocalLinearFit LocalFit(const GridStrategy& f, double at, int window_nodes) {
  if (window_nodes < 3) throw ConfigError("fit window must span >= 3 nodes");
  if (window_nodes > f.size()) {
    throw ConfigError("fit window is wider than the grid");
  }
  if (!f.domain().contains(at)) {
    throw DomainError("fit anchor lies outside the strategy domain");
  }
  const double h = f.spacing();
  const int nearest = static_cast<int>(
      std::lround((at - f.domain().lo) / h));
  int first = nearest - window_nodes / 2;
  first = std::clamp(first, 0, f.size() - window_nodes);
  const int last = first + window_nodes - 1;

  // Centred, node-spaced coordinates keep the normal equations diagonal.
  // Values are taken relative to the first node so flat data stays exact.
  const double mid = 0.5 * (first + last);
  const double y0 = f.value(first);
  double sum_y = 0, sum_ty = 0, sum_tt = 0, sum_t4 = 0, sum_tty = 0;
  for (int i = first; i <= last; ++i) {
    const double t = i - mid;
    const double y = f.value(i) - y0;
    sum_y += y;
    sum_ty += t * y;
    sum_tt += t * t;
    sum_t4 += t * t * t * t;
    sum_tty += t * t * y;
  }
  const double n = window_nodes;
  const double mean_y = sum_y / n;
  const double beta = sum_ty / sum_tt;
  const double mean_tt = sum_tt / n;
  const double gamma =
      (sum_tty - mean_tt * sum_y) / (sum_t4 - n * mean_tt * mean_tt);

  double ss = 0.0;
  for (int i = first; i <= last; ++i) {
    const double t = i - mid;
    const double e = f.value(i) - y0 - (mean_y + beta * t);
    ss += e * e;
  }

  const double tau = (at - f.node(first)) / h - (mid - first);
  LocalLinearFit fit;
  fit.anchor_opp = at;
  fit.anchor_own = f.Eval(at);
  fit.slope = (beta + 2.0 * gamma * tau) / h;
  fit.residual = std::sqrt(ss / n);
  fit.first_node = first;
  fit.last_node = last;
  return fit;
}

}  // namespace funcgame
