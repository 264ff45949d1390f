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

#include "funcgame/report.h"

#include <cstdio>

#include "funcgame/error.h"

namespace funcgame {

Label LabelFor(double eps1, double eps2) {
  const bool b1 = eps1 == 0.0, l1 = eps1 == 1.0;
  const bool b2 = eps2 == 0.0, l2 = eps2 == 1.0;
  if (b1 && b2) return Label::kBB;
  if (l1 && b2) return Label::kLB;
  if (b1 && l2) return Label::kBL;
  if (l1 && l2) return Label::kLL;
  return Label::kMixed;
}

std::string LabelName(Label label, double eps1, double eps2) {
  switch (label) {
    case Label::kBB: return "BB";
    case Label::kLB: return "LB";
    case Label::kBL: return "BL";
    case Label::kLL: return "LL";
    case Label::kMixed: {
      char buf[64];
      std::snprintf(buf, sizeof(buf), "MIXED(%.6g,%.6g)", eps1, eps2);
      return buf;
    }
  }
  return "BB";
}

Label ParseLabel(const std::string& name) {
  if (name == "BB") return Label::kBB;
  if (name == "LB") return Label::kLB;
  if (name == "BL") return Label::kBL;
  if (name == "LL") return Label::kLL;
  throw ConfigError("unknown equilibrium label '" + name +
                    "' (expected BB, LB, BL or LL)");
}

void CornerDegrees(Label label, double& eps1, double& eps2) {
  switch (label) {
    case Label::kBB: eps1 = 0; eps2 = 0; return;
    case Label::kLB: eps1 = 1; eps2 = 0; return;
    case Label::kBL: eps1 = 0; eps2 = 1; return;
    case Label::kLL: eps1 = 1; eps2 = 1; return;
    case Label::kMixed: break;
  }
  throw ConfigError("MIXED is not a corner label");
}

}  // namespace funcgame
