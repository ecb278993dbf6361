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


#ifndef R2R_TESTS_TEST_UTIL_H_
#define R2R_TESTS_TEST_UTIL_H_

#include <algorithm>
#include <cmath>
#include <random>

#include <Eigen/Dense>

#include "r2r/line_model.h"

namespace r2r::testing {

inline Eigen::VectorXd Uniform(std::mt19937_64& rng, int n, double lo,
                               double hi) {
  std::uniform_real_distribution<double> dist(lo, hi);
  Eigen::VectorXd v(n);
  for (int i = 0; i < n; ++i) v[i] = dist(rng);
  return v;
}

// Tensions in [0, 60] N and velocities in [0, 0.2] m/s.
inline LineState RandomState(std::mt19937_64& rng, int n) {
  return LineState{Uniform(rng, n, 0.0, 60.0), Uniform(rng, n, 0.0, 0.2)};
}

inline Eigen::VectorXd Constant(int n, double value) {
  return Eigen::VectorXd::Constant(n, value);
}

inline double RelativeError(double a, double b, double floor = 1e-12) {
  return std::abs(a - b) / std::max({std::abs(a), std::abs(b), floor});
}

}  // namespace r2r::testing

#endif  // R2R_TESTS_TEST_UTIL_H_
