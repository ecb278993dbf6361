// Copyright 2026 The R2R MPPI Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef R2R_ERRORS_H_
#define R2R_ERRORS_H_

#include <stdexcept>
#include <string>

namespace r2r {

// Invalid parameters, mismatched dimensions, malformed config documents.
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A state component became NaN or infinite during simulation.
class DivergenceError : public std::runtime_error {
 public:
  DivergenceError(const std::string& what, long step)
      : std::runtime_error(what + " (step " + std::to_string(step) + ")"),
        step_(step) {}

  // Index of the step that produced the non-finite state, -1 if unknown.
  long step() const { return step_; }

 private:
  long step_;
};

// Reference tension at or above E*A, where the equilibrium recursion is
// singular.
class SingularReferenceError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// Every rollout in a batch diverged, or the LMPC normal matrix is singular.
class ControllerFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace r2r

#endif  // R2R_ERRORS_H_
