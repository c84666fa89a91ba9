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

#ifndef LAMBDACC_OBJECTIVE_H_
#define LAMBDACC_OBJECTIVE_H_

#include <cmath>
#include <utility>
#include <vector>

#include "absl/container/flat_hash_map.h"
#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "lambdacc/clustering.h"
#include "lambdacc/graph.h"

namespace lambdacc {

// An instance of the correlation clustering objective on a graph: the
// resolution and one non-negative weight per vertex.
struct ClusteringParams {
  double resolution = 0.0;
  std::vector<double> node_weights;
};

// Unit vertex weights with the given resolution.
ClusteringParams UnitParams(const WeightedGraph& graph, double resolution);

// Checks 0 <= resolution < 1, one weight per vertex and non-negative weights.
// A resolution of exactly 0 is accepted here as a degenerate instance; user
// facing entry points require it to be strictly positive.
absl::Status ValidateParams(const WeightedGraph& graph,
                            const ClusteringParams& params);

// w'_uv: 0 on the diagonal, w_uv - resolution * k_u * k_v for edges and
// -resolution * k_u * k_v for non-adjacent pairs.
absl::StatusOr<double> RescaledWeight(const WeightedGraph& graph,
                                      const ClusteringParams& params,
                                      NodeId u, NodeId v);

// Sum of w' over unordered pairs of distinct vertices sharing a cluster.
// Evaluated as (intra-cluster edge weight) minus
// resolution * sum_c (K_c^2 - sum_{v in c} k_v^2) / 2.
absl::StatusOr<double> CcObjective(const WeightedGraph& graph,
                                   const ClusteringParams& params,
                                   const Clustering& clustering);

// Objective change when a vertex of weight `node_weight` leaves its cluster
// (mass `current_mass`, which includes the vertex, and edge weight
// `edges_to_current` from the vertex to the other members) for a cluster of
// mass `target_mass` joined by edge weight `edges_to_target`.
inline double MoveGain(double resolution, double node_weight,
                       double edges_to_current, double current_mass,
                       double edges_to_target, double target_mass) {
  return (edges_to_target - resolution * node_weight * target_mass) -
         (edges_to_current - resolution * node_weight * current_mass +
          resolution * node_weight * node_weight);
}

// Gains up to this bound are within rounding error of the terms of MoveGain
// and count as zero; accepting them can make vertices cycle forever.
inline double MoveGainTolerance(double resolution, double node_weight,
                                double edges_to_current, double current_mass,
                                double edges_to_target, double target_mass) {
  constexpr double kRelativeTolerance = 1e-12;
  return kRelativeTolerance *
         (std::abs(edges_to_current) + std::abs(edges_to_target) +
          std::abs(resolution * node_weight) *
              (std::abs(current_mass) + std::abs(target_mass) +
               std::abs(node_weight)));
}

// Objective change of moving v into `target`. `edge_sums` maps cluster ids to
// the summed weight of edges from v into that cluster; missing ids count as
// zero. Returns exactly 0 when target is v's cluster. `target` may name an
// empty cluster, which is how a move into a new singleton is expressed.
absl::StatusOr<double> MoveDelta(
    const WeightedGraph& graph, const ClusteringParams& params,
    const Clustering& clustering, NodeId v, ClusterId target,
    const absl::flat_hash_map<ClusterId, double>& edge_sums);

// Parameters under which the objective equals modularity with resolution
// `gamma` up to a positive factor: k_v = weighted degree, resolution =
// gamma / (2 * total weight).
absl::StatusOr<ClusteringParams> ModularityParams(const WeightedGraph& graph,
                                                  double gamma);

// Modularity Q of a clustering. Equal to CcObjective under ModularityParams
// divided by the total edge weight.
absl::StatusOr<double> ModularityValue(const WeightedGraph& graph, double gamma,
                                       const Clustering& clustering);

// Exhaustive search over all set partitions. Only for n <= 12.
absl::StatusOr<std::pair<Clustering, double>> BruteForceBest(
    const WeightedGraph& graph, const ClusteringParams& params);

}  // namespace lambdacc

#endif  // LAMBDACC_OBJECTIVE_H_
