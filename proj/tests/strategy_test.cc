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

#include <cmath>
#include <random>
#include <vector>

#include "doctest.h"
#include "funcgame/error.h"
#include "funcgame/games.h"
#include "funcgame/oracle.h"
#include "funcgame/responses.h"
#include "funcgame/strategy.h"

using namespace funcgame;

namespace {

const Interval kUnit{0.0, 1.0};

GridStrategy Grid(std::vector<double> v) {
  return GridStrategy(Player::kOne, kUnit, kUnit, std::move(v));
}

}  // namespace

TEST_CASE("eval examples") {
  const GridStrategy c = GridStrategy::Constant(Player::kOne, kUnit, kUnit,
                                                9, 0.25);
  for (double x : {0.0, 0.13, 0.5, 0.77, 1.0}) CHECK(c.Eval(x) == 0.25);

  const GridStrategy tent = Grid({0.0, 1.0, 0.0});
  CHECK(tent.Eval(0.25) == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(tent.Eval(0.5) == 1.0);
  CHECK(tent.Eval(-1.0) == 0.0);
  CHECK(tent.Eval(2.0) == 0.0);

  const GridStrategy up = Grid({0.1, 0.2, 0.4});
  CHECK(up.Eval(-1.0) == 0.1);
  CHECK(up.Eval(7.0) == 0.4);
}

TEST_CASE("grid invariants") {
  CHECK_THROWS_AS(Grid({0.0, 1.0}), ConfigError);
  CHECK_THROWS_AS(Grid({0.0, NAN, 1.0}), ConfigError);
  const GridStrategy g = GridStrategy::Sample(Player::kTwo, {0.0, 2.0}, kUnit,
                                              5, [](double x) { return x / 2; });
  CHECK(g.size() == 5);
  CHECK(g.spacing() == 0.5);
  for (int i = 0; i + 1 < g.size(); ++i) CHECK(g.node(i + 1) > g.node(i));
  CHECK(g.node(4) == 2.0);
}

TEST_CASE("eval is monotone under node-wise domination") {
  std::mt19937 rng(7);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<double> a(17), b(17);
    for (int i = 0; i < 17; ++i) {
      b[i] = u(rng);
      a[i] = std::min(1.0, b[i] + 0.2 * u(rng));
    }
    const GridStrategy ga = Grid(a), gb = Grid(b);
    for (int k = 0; k <= 200; ++k) {
      const double x = -0.1 + 1.2 * k / 200;
      CHECK(ga.Eval(x) >= gb.Eval(x));
    }
  }
}

TEST_CASE("sampling a piecewise-linear function round-trips at nodes") {
  auto pl = [](double x) { return x < 0.5 ? 0.8 * x : 0.4 + 0.2 * (x - 0.5); };
  const GridStrategy g = GridStrategy::Sample(Player::kOne, kUnit, kUnit, 33, pl);
  for (int i = 0; i < g.size(); ++i) CHECK(g.Eval(g.node(i)) == pl(g.node(i)));
  const GridStrategy h = GridStrategy::Sample(
      Player::kOne, kUnit, kUnit, 33, [&g](double x) { return g.Eval(x); });
  CHECK(SupDistance(g, h) == 0.0);
}

TEST_CASE("argmax examples") {
  const GameKernel res = MakeResourceGame({1.5});
  ArgmaxResult a = Argmax1d(
      [&](double x) { return res.Utility(Player::kOne, x, 0.24); }, kUnit);
  CHECK(a.x == doctest::Approx(0.24).epsilon(1e-7));

  const GameKernel pd = MakePrisonerGame({});
  for (double x2 : {0.0, 0.3, 1.0}) {
    a = Argmax1d([&](double x) { return pd.Utility(Player::kOne, x, x2); },
                 kUnit);
    CHECK(a.x == 0.0);
  }

  a = Argmax1d([](double x) { return -(x - 0.3) * (x - 0.3); }, kUnit);
  CHECK(std::abs(a.x - 0.3) <= 1e-8);

  // Boundary maxima land exactly on the bound.
  a = Argmax1d([](double x) { return x; }, kUnit);
  CHECK(a.x == 1.0);
}

TEST_CASE("argmax reports NaN with the offending point") {
  auto bad = [](double x) { return x > 0.5 ? NAN : x; };
  try {
    Argmax1d(bad, kUnit);
    FAIL("no exception");
  } catch (const EvaluationError& e) {
    CHECK(e.point() > 0.5);
  }
}

TEST_CASE("argmax ties resolve to the smaller action") {
  auto twin = [](double x) {
    return -std::min((x - 0.2) * (x - 0.2), (x - 0.8) * (x - 0.8));
  };
  CHECK(Argmax1d(twin, kUnit).x == doctest::Approx(0.2).epsilon(1e-7));
}

TEST_CASE("argmax matches an exhaustive scan on random concave quadratics") {
  std::mt19937 rng(20261014);
  std::uniform_real_distribution<double> vertex(-0.2, 1.2), curv(0.1, 50.0);
  for (int trial = 0; trial < 40; ++trial) {
    const double v = vertex(rng), c = curv(rng);
    auto f = [v, c](double x) { return -c * (x - v) * (x - v); };
    const double got = Argmax1d(f, kUnit).x;
    const double want = BruteArgmax(f, kUnit, 1000000);
    CHECK(std::abs(got - want) <= 1e-6);
  }
}

TEST_CASE("local fit examples") {
  const GridStrategy c = GridStrategy::Constant(Player::kOne, kUnit, kUnit,
                                                33, 0.4);
  CHECK(LocalFit(c, 0.37).slope == 0.0);

  const GridStrategy lin = GridStrategy::Sample(
      Player::kOne, {0.0, 0.5}, kUnit, 65, [](double x) { return 2 * x; });
  for (double at : {0.0, 0.11, 0.25, 0.5}) {
    const LocalLinearFit f = LocalFit(lin, at);
    CHECK(std::abs(f.slope - 2.0) <= 1e-9);
    CHECK(f.residual <= 1e-12);
  }

  const GameKernel res = MakeResourceGame({1.5});
  const GridStrategy br = BestResponseGrid(res, Player::kOne);
  CHECK(LocalFit(br, 0.24).slope == doctest::Approx(1.0 / 6).epsilon(1e-3));

  CHECK_THROWS_AS(LocalFit(lin, 0.7), DomainError);
  CHECK_THROWS_AS(LocalFit(lin, 0.2, 2), ConfigError);
  CHECK_THROWS_AS(LocalFit(Grid({0, 0.5, 1}), 0.2, 5), ConfigError);
}
