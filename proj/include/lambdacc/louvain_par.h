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

#ifndef LAMBDACC_LOUVAIN_PAR_H_
#define LAMBDACC_LOUVAIN_PAR_H_

#include <cstdint>
#include <functional>
#include <span>
#include <utility>

#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "lambdacc/best_move.h"
#include "lambdacc/clustering.h"
#include "lambdacc/frontier.h"
#include "lambdacc/graph.h"
#include "lambdacc/louvain_seq.h"
#include "lambdacc/objective.h"

namespace lambdacc {

enum class Schedule {
  // Targets are computed against the state at the start of the iteration and
  // applied together afterwards. Deterministic.
  kSynchronous,
  // Each vertex moves as soon as its target is known; concurrent readers may
  // see stale cluster masses.
  kAsynchronous,
};

enum class FrontierPolicy {
  kAllVertices,
  // Neighbors of members of every source and destination cluster, plus the
  // members of destination clusters.
  kClusterNeighbors,
  // Neighbors of moved vertices.
  kVertexNeighbors,
};

// Snapshot handed to ParOptions::on_iteration at the end of every best-move
// iteration, before cluster masses are recomputed from scratch.
struct IterationTrace {
  int level = 0;
  int iteration = 0;
  std::size_t frontier_size = 0;
  std::size_t num_moved = 0;
  // Sum of the maintained cluster masses, and the exact sum of vertex weights.
  double mass_sum = 0.0;
  double total_node_weight = 0.0;
  // Desired target per vertex (kStay when not in the frontier or staying);
  // only filled for the synchronous schedule.
  std::span<const ClusterId> desired;
  std::span<const ClusterId> assignment;
};

struct RefineTrace {
  int level = 0;
  const WeightedGraph* graph = nullptr;
  const ClusteringParams* params = nullptr;
  const Clustering* before = nullptr;
  const Clustering* after = nullptr;
};

struct ParOptions {
  Schedule schedule = Schedule::kAsynchronous;
  FrontierPolicy frontier = FrontierPolicy::kVertexNeighbors;
  bool refine = true;
  int num_iter = 10;
  std::uint64_t seed = 0;
  int threads = 1;
  // Vertices with at least this many neighbors reduce their neighbor scan in
  // parallel.
  int degree_threshold = 1000;
  // Synchronous schedule only: apply the computed moves one at a time in
  // vertex order, re-checking each against the current state and skipping
  // those that no longer improve the objective. Used for refinement so that
  // a refinement pass cannot lower the objective.
  bool no_harm_refinement = false;

  std::function<void(const IterationTrace&)> on_iteration;
  std::function<void(const RefineTrace&)> on_refine;
};

absl::Status ValidateOptions(const ParOptions& options);

// Up to options.num_iter iterations of concurrent best moves, starting from
// all vertices and then following options.frontier. Returns the clustering
// and whether any vertex moved.
absl::StatusOr<std::pair<Clustering, bool>> ParBestMoves(
    const WeightedGraph& graph, const ClusteringParams& params,
    Clustering clustering, const ParOptions& options);

// Vertices to revisit after `moved[i]` went from `prev_cluster[i]` to
// `new_cluster[i]`. `clustering` is the state after the moves.
absl::StatusOr<Frontier> ComputeFrontier(FrontierPolicy policy,
                                         std::span<const NodeId> moved,
                                         std::span<const ClusterId> prev_cluster,
                                         std::span<const ClusterId> new_cluster,
                                         const WeightedGraph& graph,
                                         const Clustering& clustering);

// Same contract and output as Compress, computed with parallel aggregation.
absl::StatusOr<CompressedLevel> ParCompress(const WeightedGraph& graph,
                                            const ClusteringParams& params,
                                            const Clustering& clustering);

// Same contract and output as Flatten, computed in parallel.
absl::StatusOr<Clustering> ParFlatten(const Clustering& fine,
                                      const Clustering& coarse,
                                      std::span<const NodeId> mapping);

// Parallel Louvain with optional refinement while unwinding the levels.
absl::StatusOr<Clustering> ParallelCc(const WeightedGraph& graph,
                                      const ClusteringParams& params,
                                      const ParOptions& options = {});

enum class Accumulation { kAuto, kSequential, kParallel };

// Delta-maximizing target for v (kStay, kNewCluster or a cluster id) and its
// delta. kAuto uses the parallel neighbor reduction when the degree reaches
// `degree_threshold`.
absl::StatusOr<BestMove> PerVertexBestTarget(
    const WeightedGraph& graph, const ClusteringParams& params,
    const Clustering& clustering, NodeId v, int degree_threshold = 1000,
    Accumulation accumulation = Accumulation::kAuto);

}  // namespace lambdacc

#endif  // LAMBDACC_LOUVAIN_PAR_H_
