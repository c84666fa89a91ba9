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

#ifndef LAMBDACC_LOUVAIN_SEQ_H_
#define LAMBDACC_LOUVAIN_SEQ_H_

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "absl/status/statusor.h"
#include "lambdacc/clustering.h"
#include "lambdacc/graph.h"
#include "lambdacc/objective.h"

namespace lambdacc {

// One coarsening step: every non-empty cluster of the finer level becomes a
// vertex.
struct CompressedLevel {
  WeightedGraph graph;
  // k' of each coarse vertex, the mass of the cluster it replaces.
  std::vector<double> node_weights;
  // Fine vertex -> coarse vertex.
  std::vector<NodeId> mapping;
  // Objective mass that the coarse graph no longer sees: intra-cluster edge
  // weight minus the resolution term over intra-cluster pairs. For any coarse
  // clustering C'', CcObjective(fine, Flatten(C, C'')) equals
  // CcObjective(coarse, C'') + internal_offset.
  double internal_offset = 0.0;
};

// Hooks for observing a sequential run. `level_offset` is the objective
// already folded into coarser levels, so CcObjective(graph, params,
// clustering) + level_offset is the objective on the input graph.
struct SeqTrace {
  std::function<void(const WeightedGraph& graph, const ClusteringParams& params,
                     const Clustering& clustering, double level_offset,
                     double delta)>
      on_move;
  // Called each time a coarse result is flattened onto `level` (0 is the
  // input graph).
  std::function<void(int level, const Clustering& flattened)> on_level;
};

struct SeqOptions {
  // Best-move passes per level; nullopt runs each level to convergence.
  std::optional<int> num_iter = 10;
  std::uint64_t seed = 0;
  const SeqTrace* trace = nullptr;
};

// Repeated best-move passes over the vertices in a fresh random order, until
// a pass makes no move or `max_passes` passes ran (nullopt: no cap). Returns
// the clustering and whether any vertex moved.
absl::StatusOr<std::pair<Clustering, bool>> SeqBestMoves(
    const WeightedGraph& graph, const ClusteringParams& params,
    Clustering clustering, std::uint64_t seed,
    std::optional<int> max_passes = std::nullopt,
    const SeqTrace* trace = nullptr, double level_offset = 0.0);

// Contracts each cluster to a vertex. Coarse ids are assigned in order of the
// smallest member of each cluster.
absl::StatusOr<CompressedLevel> Compress(const WeightedGraph& graph,
                                         const ClusteringParams& params,
                                         const Clustering& clustering);

// Composes a coarse clustering onto the fine level:
// result[v] = coarse.ClusterOf(mapping[v]). `fine` is the clustering
// `mapping` was derived from.
absl::StatusOr<Clustering> Flatten(const Clustering& fine,
                                   const Clustering& coarse,
                                   std::span<const NodeId> mapping);

// Sequential Louvain: best moves, then compress and recurse while anything
// moved, flattening the result back.
absl::StatusOr<Clustering> SequentialCc(const WeightedGraph& graph,
                                        const ClusteringParams& params,
                                        const SeqOptions& options = {});

}  // namespace lambdacc

#endif  // LAMBDACC_LOUVAIN_SEQ_H_
