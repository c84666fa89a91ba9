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

#ifndef LAMBDACC_EVAL_H_
#define LAMBDACC_EVAL_H_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "absl/status/statusor.h"
#include "lambdacc/clustering.h"
#include "lambdacc/graph.h"

namespace lambdacc {

// Possibly overlapping communities over vertices [0, num_nodes).
struct GroundTruth {
  std::vector<std::vector<NodeId>> communities;
};

// Fails on empty communities or ids >= num_nodes.
absl::Status ValidateGroundTruth(const GroundTruth& truth,
                                 std::size_t num_nodes);

struct PrecisionRecall {
  double precision = 0.0;
  double recall = 0.0;
};

// Each community is matched to the cluster sharing the most members with it
// (ties to the lowest cluster id); returns unweighted means over communities.
absl::StatusOr<PrecisionRecall> AvgPrecisionRecall(
    std::span<const ClusterId> assignment, const GroundTruth& truth);

// Adjusted Rand index of two labelings of the same vertices. Defined as 1
// when the expected and maximal indices coincide.
absl::StatusOr<double> AdjustedRandIndex(std::span<const ClusterId> a,
                                         std::span<const ClusterId> b);

// Mutual information normalized by the arithmetic mean of the entropies;
// 1 when both entropies are zero.
absl::StatusOr<double> NormalizedMutualInformation(
    std::span<const ClusterId> a, std::span<const ClusterId> b);

struct ClusterStats {
  std::size_t num_clusters = 0;
  std::size_t min_size = 0;
  std::size_t max_size = 0;
  double mean_size = 0.0;
};

ClusterStats ComputeClusterStats(std::span<const ClusterId> assignment);

// Metrics that were not requested are left empty.
struct EvalReport {
  double objective = 0.0;
  std::size_t num_clusters = 0;
  std::optional<double> avg_precision;
  std::optional<double> avg_recall;
  std::optional<double> ari;
  std::optional<double> nmi;
  double runtime_ms = 0.0;
  std::uint64_t seed = 0;
};

}  // namespace lambdacc

#endif  // LAMBDACC_EVAL_H_
