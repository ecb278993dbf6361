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

#ifndef R2R_PARALLEL_H_
#define R2R_PARALLEL_H_

#include <functional>

namespace r2r {

// Runs body(begin, end) over contiguous chunks of [0, n) on `workers`
// threads (the calling thread takes the first chunk). Chunks are disjoint;
// the caller owns any reduction. Exceptions from a chunk are rethrown after
// all chunks finish.
void ParallelFor(int n, int workers,
                 const std::function<void(int begin, int end)>& body);

// Worker count from the R2R_WORKERS environment variable, else
// std::thread::hardware_concurrency(), never below 1.
int DefaultWorkerCount();

}  // namespace r2r

#endif  // R2R_PARALLEL_H_
