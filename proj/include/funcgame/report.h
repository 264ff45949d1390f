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

#ifndef FUNCGAME_REPORT_H_
#define FUNCGAME_REPORT_H_

#include <limits>
#include <string>
#include <vector>

namespace funcgame {

// Which response pair produced an equilibrium. The left letter is player 1's
// response type, the right letter player 2's; kMixed covers learning degrees
// strictly between the corners.
enum class Label { kBB, kLB, kBL, kLL, kMixed };

Label LabelFor(double eps1, double eps2);
// "BB", "LB", "BL", "LL" or "MIXED(eps1,eps2)".
std::string LabelName(Label label, double eps1 = 0.0, double eps2 = 0.0);
// Accepts the four corner names. Throws ConfigError otherwise.
Label ParseLabel(const std::string& name);
// Learning degrees of a corner label.
void CornerDegrees(Label label, double& eps1, double& eps2);

struct ActionPoint {
  double x1 = 0.0;
  double x2 = 0.0;
};

struct EquilibriumReport {
  Label label = Label::kBB;
  double eps1 = 0.0;
  double eps2 = 0.0;
  std::string method;  // "closed-form", "system" or "simulate"

  ActionPoint crossing;
  // Local slopes of f1 (d x1 / d x2) and f2 (d x2 / d x1) at the crossing.
  // NaN where the strategy function has a kink at the crossing.
  double a1 = std::numeric_limits<double>::quiet_NaN();
  double a2 = std::numeric_limits<double>::quiet_NaN();
  double u1 = 0.0;
  double u2 = 0.0;

  int iters = 0;
  double residual = 0.0;
  bool converged = true;
  std::vector<ActionPoint> crossings;

  std::string label_name() const { return LabelName(label, eps1, eps2); }
};

}  // namespace funcgame

#endif  // FUNCGAME_REPORT_H_
