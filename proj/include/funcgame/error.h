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

#ifndef FUNCGAME_ERROR_H_
#define FUNCGAME_ERROR_H_

#include <stdexcept>
#include <string>

namespace funcgame {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Action outside the kernel's action box.
class DomainError : public Error {
 public:
  using Error::Error;
};

// Finite-difference stencil touches a declared singular set.
class SingularityError : public Error {
 public:
  using Error::Error;
};

// Objective returned NaN during a maximization.
class EvaluationError : public Error {
 public:
  EvaluationError(const std::string& what, double point)
      : Error(what), point_(point) {}
  double point() const { return point_; }

 private:
  double point_;
};

// Invalid parameters or configuration.
class ConfigError : public Error {
 public:
  using Error::Error;
};

// A solver failed to produce an answer.
class SolverError : public Error {
 public:
  using Error::Error;
};

class UnsupportedError : public Error {
 public:
  using Error::Error;
};

}  // namespace funcgame

#endif  // FUNCGAME_ERROR_H_
