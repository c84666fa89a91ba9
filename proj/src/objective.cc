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

#include "lambdacc/objective.h"

#include <cmath>
#include <cstddef>
#include <functional>
#include <utility>
#include <vector>

#include "absl/container/flat_hash_map.h"
#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "absl/strings/str_cat.h"
#include "lambdacc/parallel.h"
#include "lambdacc/status_macros.h"

namespace lambdacc {

ClusteringParams UnitParams(const WeightedGraph& graph, double resolution) {
  return ClusteringParams{resolution, UnitVertexWeights(graph)};
}

absl::Status ValidateParams(const WeightedGraph& graph,
                            const ClusteringParams& params) {
  if (!(params.resolution >= 0.0 && params.resolution < 1.0)) {
    return absl::InvalidArgumentError(absl::StrCat(
        "resolution must lie in [0, 1), got ", params.resolution));
  }
  if (params.node_weights.size() != graph.NumNodes()) {
    return absl::InvalidArgumentError(absl::StrCat(
        "expected ", graph.NumNodes(), " vertex weights, got ",
        params.node_weights.size()));
  }
  for (std::size_t v = 0; v < params.node_weights.size(); ++v) {
    const double k = params.node_weights[v];
    if (!(k >= 0.0) || !std::isfinite(k)) {
      return absl::InvalidArgumentError(
          absl::StrCat("vertex weight of ", v, " must be non-negative, got ",
                       k));
    }
  }
  return absl::OkStatus();
}

absl::StatusOr<double> RescaledWeight(const WeightedGraph& graph,
                                      const ClusteringParams& params,
                                      NodeId u, NodeId v) {
  const std::size_t n = graph.NumNodes();
  if (u >= n || v >= n) {
    return absl::OutOfRangeError(
        absl::StrCat("vertex pair (", u, ", ", v, ") out of range, n = ", n));
  }
  if (params.node_weights.size() != n) {
    return absl::InvalidArgumentError("vertex weights do not match graph");
  }
  if (u == v) return 0.0;
  const double penalty =
      params.resolution * params.node_weights[u] * params.node_weights[v];
  return graph.EdgeWeight(u, v).value_or(0.0) - penalty;
}

absl::StatusOr<double> CcObjective(const WeightedGraph& graph,
                                   const ClusteringParams& params,
                                   const Clustering& clustering) {
  const std::size_t n = graph.NumNodes();
  if (clustering.NumNodes() != n) {
    return absl::InvalidArgumentError(
        absl::StrCat("clustering covers ", clustering.NumNodes(),
                     " vertices, graph has ", n));
  }
  if (params.node_weights.size() != n) {
    return absl::InvalidArgumentError("vertex weights do not match graph");
  }
  const auto assignment = clustering.Assignment();
  const double intra = BlockedSum(n, [&](std::size_t u) {
    const auto nbrs = graph.Neighbors(static_cast<NodeId>(u));
    const auto wts = graph.NeighborWeights(static_cast<NodeId>(u));
    double sum = 0;
    for (std::size_t i = 0; i < nbrs.size(); ++i) {
      if (nbrs[i] > u && assignment[nbrs[i]] == assignment[u]) sum += wts[i];
    }
    return sum;
  });
  const auto& k = params.node_weights;
  std::vector<double> mass(n, 0.0);
  for (std::size_t v = 0; v < n; ++v) mass[assignment[v]] += k[v];
  const double sum_mass_sq =
      BlockedSum(n, [&](std::size_t c) { return mass[c] * mass[c]; });
  const double sum_k_sq = BlockedSum(n, [&](std::size_t v) { return k[v] * k[v]; });
  return intra - params.resolution * (sum_mass_sq - sum_k_sq) / 2;
}

absl::StatusOr<double> MoveDelta(
    const WeightedGraph& graph, const ClusteringParams& params,
    const Clustering& clustering, NodeId v, ClusterId target,
    const absl::flat_hash_map<ClusterId, double>& edge_sums) {
  const std::size_t n = graph.NumNodes();
  if (v >= n) return absl::OutOfRangeError(absl::StrCat("vertex ", v));
  if (target >= clustering.NumNodes()) {
    return absl::InvalidArgumentError(
        absl::StrCat("unknown target cluster ", target));
  }
  if (params.node_weights.size() != n || clustering.NumNodes() != n) {
    return absl::InvalidArgumentError("inputs disagree on vertex count");
  }
  const ClusterId current = clustering.ClusterOf(v);
  if (target == current) return 0.0;
  auto sum_to = [&](ClusterId c) {
    auto it = edge_sums.find(c);
    return it == edge_sums.end() ? 0.0 : it->second;
  };
  return MoveGain(params.resolution, params.node_weights[v], sum_to(current),
                  clustering.ClusterMass(current), sum_to(target),
                  clustering.ClusterMass(target));
}

absl::StatusOr<ClusteringParams> ModularityParams(const WeightedGraph& graph,
                                                  double gamma) {
  if (graph.NumNodes() == 0 || graph.NumEdges() == 0) {
    return absl::InvalidArgumentError("empty graph");
  }
  const double two_m = 2 * graph.TotalWeight();
  if (!(two_m > 0)) {
    return absl::InvalidArgumentError(
        "modularity needs a positive total edge weight");
  }
  const double resolution = gamma / two_m;
  if (!(resolution > 0.0 && resolution < 1.0)) {
    return absl::InvalidArgumentError(absl::StrCat(
        "gamma / (2 * total weight) = ", resolution, " must lie in (0, 1)"));
  }
  ClusteringParams params;
  params.resolution = resolution;
  params.node_weights.resize(graph.NumNodes());
  for (std::size_t v = 0; v < graph.NumNodes(); ++v) {
    params.node_weights[v] = graph.WeightedDegree(static_cast<NodeId>(v));
  }
  RETURN_IF_ERROR(ValidateParams(graph, params));
  return params;
}

absl::StatusOr<double> ModularityValue(const WeightedGraph& graph, double gamma,
                                       const Clustering& clustering) {
  ASSIGN_OR_RETURN(ClusteringParams params, ModularityParams(graph, gamma));
  ASSIGN_OR_RETURN(double objective, CcObjective(graph, params, clustering));
  return objective / graph.TotalWeight();
}

absl::StatusOr<std::pair<Clustering, double>> BruteForceBest(
    const WeightedGraph& graph, const ClusteringParams& params) {
  constexpr std::size_t kMaxNodes = 12;
  const std::size_t n = graph.NumNodes();
  if (n > kMaxNodes) {
    return absl::InvalidArgumentError(absl::StrCat(
        "brute force is limited to ", kMaxNodes, " vertices, got ", n));
  }
  RETURN_IF_ERROR(ValidateParams(graph, params));

  std::vector<double> rescaled(n * n, 0.0);
  for (NodeId u = 0; u < n; ++u) {
    for (NodeId v = 0; v < n; ++v) {
      ASSIGN_OR_RETURN(rescaled[u * n + v], RescaledWeight(graph, params, u, v));
    }
  }

  // Restricted growth strings: vertex i joins one of the blocks opened by
  // vertices 0..i-1 or opens a new one.
  std::vector<ClusterId> block(n, 0);
  std::vector<ClusterId> best(n, 0);
  for (std::size_t v = 0; v < n; ++v) best[v] = static_cast<ClusterId>(v);
  double best_value = 0.0;
  bool have_best = false;
  std::function<void(std::size_t, ClusterId, double)> visit =
      [&](std::size_t i, ClusterId num_blocks, double value) {
        if (i == n) {
          if (!have_best || value > best_value) {
            best_value = value;
            best = block;
            have_best = true;
          }
          return;
        }
        for (ClusterId b = 0; b <= num_blocks; ++b) {
          double gain = 0;
          for (std::size_t j = 0; j < i; ++j) {
            if (block[j] == b) gain += rescaled[i * n + j];
          }
          block[i] = b;
          visit(i + 1, b == num_blocks ? num_blocks + 1 : num_blocks,
                value + gain);
        }
      };
  visit(0, 0, 0.0);

  ASSIGN_OR_RETURN(Clustering clustering,
                   Clustering::FromAssignment(best, params.node_weights));
  ASSIGN_OR_RETURN(double value, CcObjective(graph, params, clustering));
  return std::make_pair(std::move(clustering), value);
}

}  // namespace lambdacc
