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

#ifndef LAMBDACC_GRAPH_H_
#define LAMBDACC_GRAPH_H_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "absl/status/statusor.h"

namespace lambdacc {

using NodeId = std::uint32_t;

// One (possibly duplicated, possibly one-directional) input edge.
struct Edge {
  NodeId u;
  NodeId v;
  double weight = 1.0;
};

// Immutable undirected weighted graph in compressed sparse row form.
//
// Every undirected edge {u, v} is stored twice (once per endpoint) with equal
// weight. Neighbor lists are sorted by id, contain no duplicates and no
// self-loops. Weights may be negative.
class WeightedGraph {
 public:
  WeightedGraph() : offsets_(1, 0) {}

  // Assembles a graph from CSR arrays that already satisfy the invariants
  // above. Degrees and totals are derived here.
  static WeightedGraph FromCsr(std::vector<std::uint64_t> offsets,
                               std::vector<NodeId> neighbors,
                               std::vector<double> weights);

  std::size_t NumNodes() const { return offsets_.size() - 1; }
  // Number of undirected edges.
  std::size_t NumEdges() const { return neighbors_.size() / 2; }
  // Sum of weights over undirected edges.
  double TotalWeight() const { return total_weight_; }

  std::size_t Degree(NodeId v) const {
    return static_cast<std::size_t>(offsets_[v + 1] - offsets_[v]);
  }
  // Sum of incident edge weights.
  double WeightedDegree(NodeId v) const { return weighted_degree_[v]; }

  std::span<const NodeId> Neighbors(NodeId v) const {
    return {neighbors_.data() + offsets_[v], Degree(v)};
  }
  std::span<const double> NeighborWeights(NodeId v) const {
    return {weights_.data() + offsets_[v], Degree(v)};
  }

  // Weight of edge {u, v}, or nullopt when the pair is not adjacent.
  std::optional<double> EdgeWeight(NodeId u, NodeId v) const;

  std::span<const std::uint64_t> Offsets() const { return offsets_; }

 private:
  std::vector<std::uint64_t> offsets_;
  std::vector<NodeId> neighbors_;
  std::vector<double> weights_;
  std::vector<double> weighted_degree_;
  double total_weight_ = 0;
};

// Builds a graph from an arbitrary edge list.
//
// Entries with the same orientation (u, v) are merged by summing their
// weights. If both orientations of a pair occur, the edge weight is the mean
// of the two per-orientation sums, so listing an edge in both directions is
// the same as listing it once. Self-loops are dropped. The vertex count is
// 1 + the largest id seen, or `num_nodes` when given (which must cover every
// id). An empty list without `num_nodes` is an error.
absl::StatusOr<WeightedGraph> BuildGraph(
    std::span<const Edge> edges,
    std::optional<std::size_t> num_nodes = std::nullopt);

// Vertex weights with k_v = 1 for all v.
std::vector<double> UnitVertexWeights(const WeightedGraph& graph);

}  // namespace lambdacc

#endif  // LAMBDACC_GRAPH_H_
