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

#ifndef R2R_RANDOM_H_
#define R2R_RANDOM_H_

#include <array>
#include <cstdint>

namespace r2r {

// Philox4x32-10 counter-based generator (Salmon et al., SC'11). The output
// is a pure function of (counter, key), so any stream can be regenerated
// from its coordinates without touching shared state.
class Philox4x32 {
 public:
  using Counter = std::array<uint32_t, 4>;
  using Key = std::array<uint32_t, 2>;

  static Counter Block(Counter counter, Key key);
};

// Seed domains. The plant noise and the controller's rollout noise are keyed
// by the same user seed but never share a counter.
enum class NoiseDomain : uint32_t {
  kRollout = 0,
  kPlant = 1,
  kTest = 2,
};

// Standard-normal stream addressed by (seed, domain, timestep, index).
// For rollouts, index is the rollout number k; for the plant it is 0.
// Draws come in Box-Muller pairs from successive Philox blocks.
class NormalStream {
 public:
  NormalStream(uint64_t seed, NoiseDomain domain, uint64_t timestep,
               uint32_t index);

  double Next();

 private:
  Philox4x32::Key key_;
  Philox4x32::Counter counter_;
  double cached_ = 0.0;
  bool has_cached_ = false;
};

}  // namespace r2r

#endif  // R2R_RANDOM_H_
