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

#include "lambdacc/louvain_seq.h"

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <optional>
#include <random>
#include <span>
#include <utility>
#include <vector>

#include "absl/container/flat_hash_map.h"
#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "coarsen.h"
#include "lambdacc/best_move.h"
#include "lambdacc/parallel.h"
#include "lambdacc/status_macros.h"

namespace lambdacc {

absl::StatusOr<std::pair<Clustering, bool>> SeqBestMoves(
    const WeightedGraph& graph, const ClusteringParams& params,
    Clustering clustering, std::uint64_t seed, std::optional<int> max_passes,
    const SeqTrace* trace, double level_offset) {
  RETURN_IF_ERROR(ValidateParams(graph, params));
  const std::size_t n = graph.NumNodes();
  if (clustering.NumNodes() != n) {
    return absl::InvalidArgumentError("clustering does not match graph");
  }
  std::mt19937_64 rng(seed);
  std::vector<NodeId> order(n);
  std::iota(order.begin(), order.end(), NodeId{0});
  ClusterAccumulator scratch(n);

  bool any_moved = false;
  for (int pass = 0; !max_passes.has_value() || pass < *max_passes; ++pass) {
    std::shuffle(order.begin(), order.end(), rng);
    bool moved = false;
    for (NodeId v : order) {
      const BestMove best = BestMoveSequential(
          graph, params, ClusteringView(clustering), v, scratch);
      if (best.target == kStay) continue;
      const ClusterId target = best.target == kNewCluster
                                   ? clustering.EmptyCluster()
                                   : best.target;
      clustering.Move(v, target, params.node_weights[v]);
      moved = true;
      if (trace != nullptr && trace->on_move) {
        trace->on_move(graph, params, clustering, level_offset, best.delta);
      }
    }
    any_moved |= moved;
    if (!moved) break;
  }
  return std::make_pair(std::move(clustering), any_moved);
}

absl::StatusOr<CompressedLevel> Compress(const WeightedGraph& graph,
                                         const ClusteringParams& params,
                                         const Clustering& clustering) {
  RETURN_IF_ERROR(ValidateParams(graph, params));
  const std::size_t n = graph.NumNodes();
  if (clustering.NumNodes() != n) {
    return absl::InvalidArgumentError("clustering does not match graph");
  }
  CompressedLevel level;

  constexpr NodeId kUnset = ~NodeId{0};
  std::vector<NodeId> coarse_of_cluster(n, kUnset);
  level.mapping.resize(n);
  NodeId num_coarse = 0;
  for (std::size_t v = 0; v < n; ++v) {
    NodeId& id = coarse_of_cluster[clustering.ClusterOf(static_cast<NodeId>(v))];
    if (id == kUnset) id = num_coarse++;
    level.mapping[v] = id;
  }

  const auto& k = params.node_weights;
  level.node_weights.assign(num_coarse, 0.0);
  for (std::size_t v = 0; v < n; ++v) level.node_weights[level.mapping[v]] += k[v];

  const double intra = BlockedSum(n, [&](std::size_t u) {
    const auto nbrs = graph.Neighbors(static_cast<NodeId>(u));
    const auto wts = graph.NeighborWeights(static_cast<NodeId>(u));
    double sum = 0;
    for (std::size_t i = 0; i < nbrs.size(); ++i) {
      if (nbrs[i] > u && level.mapping[nbrs[i]] == level.mapping[u]) {
        sum += wts[i];
      }
    }
    return sum;
  });
  const double sum_mass_sq = BlockedSum(num_coarse, [&](std::size_t c) {
    return level.node_weights[c] * level.node_weights[c];
  });
  const double sum_k_sq = BlockedSum(n, [&](std::size_t v) { return k[v] * k[v]; });
  level.internal_offset =
      intra - params.resolution * (sum_mass_sq - sum_k_sq) / 2;

  absl::flat_hash_map<std::uint64_t, double> merged;
  for (NodeId u = 0; u < n; ++u) {
    const auto nbrs = graph.Neighbors(u);
    const auto wts = graph.NeighborWeights(u);
    for (std::size_t i = 0; i < nbrs.size(); ++i) {
      if (nbrs[i] <= u) continue;
      NodeId a = level.mapping[u];
      NodeId b = level.mapping[nbrs[i]];
      if (a == b) continue;
      if (a > b) std::swap(a, b);
      merged[internal::PairKey(a, b)] += wts[i];
    }
  }
  std::vector<internal::CoarseEdge> edges;
  edges.reserve(merged.size());
  for (const auto& [key, w] : merged) {
    edges.push_back({static_cast<NodeId>(key >> 32),
                     static_cast<NodeId>(key & 0xffffffffu), w});
  }
  std::sort(edges.begin(), edges.end(),
            [](const internal::CoarseEdge& x, const internal::CoarseEdge& y) {
              return internal::PairKey(x.a, x.b) < internal::PairKey(y.a, y.b);
            });
  level.graph = internal::GraphFromSortedEdges(num_coarse, edges);
  return level;
}

absl::StatusOr<Clustering> Flatten(const Clustering& fine,
                                   const Clustering& coarse,
                                   std::span<const NodeId> mapping) {
  RETURN_IF_ERROR(internal::CheckMapping(fine, mapping, coarse.NumNodes()));
  return internal::FlattenAssignment(mapping, coarse, /*parallel=*/false);
}

absl::StatusOr<Clustering> SequentialCc(const WeightedGraph& graph,
                                        const ClusteringParams& params,
                                        const SeqOptions& options) {
  RETURN_IF_ERROR(ValidateParams(graph, params));
  if (options.num_iter.has_value() && *options.num_iter < 1) {
    return absl::InvalidArgumentError("num_iter must be at least 1");
  }

  // Mappings of each coarsening step, finest first.
  std::vector<std::vector<NodeId>> mappings;
  std::optional<WeightedGraph> owned_graph;
  const WeightedGraph* current = &graph;
  ClusteringParams current_params = params;
  double offset = 0.0;
  Clustering result;
  for (int level = 0;; ++level) {
    ASSIGN_OR_RETURN(
        auto moves,
        SeqBestMoves(*current, current_params,
                     Clustering::Singletons(current_params.node_weights),
                     MixSeed(options.seed, static_cast<std::uint64_t>(level)),
                     options.num_iter, options.trace, offset));
    auto& [clustering, moved] = moves;
    if (!moved || clustering.NumClusters() == current->NumNodes()) {
      result = std::move(clustering);
      break;
    }
    ASSIGN_OR_RETURN(CompressedLevel coarse,
                     Compress(*current, current_params, clustering));
    offset += coarse.internal_offset;
    mappings.push_back(std::move(coarse.mapping));
    current_params.node_weights = std::move(coarse.node_weights);
    owned_graph = std::move(coarse.graph);
    current = &*owned_graph;
  }
  owned_graph.reset();

  for (std::size_t i = mappings.size(); i-- > 0;) {
    ASSIGN_OR_RETURN(result, internal::FlattenAssignment(mappings[i], result,
                                                         /*parallel=*/false));
    if (options.trace != nullptr && options.trace->on_level) {
      options.trace->on_level(static_cast<int>(i), result);
    }
  }
  return result;
}

}  // namespace lambdacc
