// Copyright 2026 The LambdaCC Authors
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

#ifndef LAMBDACC_RMAT_H_
#define LAMBDACC_RMAT_H_

#include <cstdint>

#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "lambdacc/graph.h"

namespace lambdacc {

struct RmatParams {
  int scale = 10;  // 2^scale vertices.
  std::uint64_t num_samples = 0;
  double a = 0.5;
  double b = 0.1;
  double c = 0.1;
  double d = 0.3;
  std::uint64_t seed = 0;
};

// Counters over the generator's own samples.
struct RmatStats {
  std::uint64_t samples = 0;
  // Samples whose first (most significant) descent picked quadrant a.
  std::uint64_t first_level_a = 0;
  std::uint64_t self_loops = 0;
  std::uint64_t duplicates = 0;
};

absl::Status ValidateRmatParams(const RmatParams& params);

// Draws num_samples directed pairs by recursive quadrant descent, drops
// self-loops and repeated pairs, and builds the undirected unit-weight graph
// on 2^scale vertices. Deterministic given the seed, for any thread count.
absl::StatusOr<WeightedGraph> GenerateRmat(const RmatParams& params,
                                           RmatStats* stats = nullptr);

}  // namespace lambdacc

#endif  // LAMBDACC_RMAT_H_
