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

#include "lambdacc/graph.h"

#include <algorithm>
#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "absl/strings/str_cat.h"
#include "lambdacc/parallel.h"

namespace lambdacc {

WeightedGraph WeightedGraph::FromCsr(std::vector<std::uint64_t> offsets,
                                     std::vector<NodeId> neighbors,
                                     std::vector<double> weights) {
  WeightedGraph graph;
  graph.offsets_ = std::move(offsets);
  graph.neighbors_ = std::move(neighbors);
  graph.weights_ = std::move(weights);
  const std::size_t n = graph.NumNodes();
  graph.weighted_degree_.assign(n, 0.0);
  ParallelFor(0, n, [&](std::size_t v) {
    double sum = 0;
    for (double w : graph.NeighborWeights(static_cast<NodeId>(v))) sum += w;
    graph.weighted_degree_[v] = sum;
  });
  graph.total_weight_ = BlockedSum(n, [&](std::size_t u) {
    const auto nbrs = graph.Neighbors(static_cast<NodeId>(u));
    const auto wts = graph.NeighborWeights(static_cast<NodeId>(u));
    double sum = 0;
    for (std::size_t i = 0; i < nbrs.size(); ++i) {
      if (nbrs[i] > u) sum += wts[i];
    }
    return sum;
  });
  return graph;
}

std::optional<double> WeightedGraph::EdgeWeight(NodeId u, NodeId v) const {
  const auto nbrs = Neighbors(u);
  auto it = std::lower_bound(nbrs.begin(), nbrs.end(), v);
  if (it == nbrs.end() || *it != v) return std::nullopt;
  return NeighborWeights(u)[it - nbrs.begin()];
}

namespace {

struct Entry {
  NodeId neighbor;
  bool reverse;
  double weight;
};

}  // namespace

absl::StatusOr<WeightedGraph> BuildGraph(std::span<const Edge> edges,
                                         std::optional<std::size_t> num_nodes) {
  if (edges.empty() && !num_nodes.has_value()) {
    return absl::InvalidArgumentError("empty graph");
  }
  std::size_t n = 0;
  for (const Edge& e : edges) {
    n = std::max<std::size_t>(n, std::max(e.u, e.v) + std::size_t{1});
  }
  if (num_nodes.has_value()) {
    if (*num_nodes < n) {
      return absl::InvalidArgumentError(
          absl::StrCat("vertex id ", n - 1, " out of range for n = ",
                       *num_nodes));
    }
    n = *num_nodes;
  }

  // Bucket both orientations of every edge by endpoint, preserving input
  // order within a bucket so duplicate sums are order-stable.
  std::vector<std::uint64_t> offsets(n + 1, 0);
  for (const Edge& e : edges) {
    if (e.u == e.v) continue;
    ++offsets[e.u];
    ++offsets[e.v];
  }
  const std::uint64_t num_entries = ExclusiveScan(offsets);
  std::vector<NodeId> neighbors(num_entries);
  std::vector<double> weights(num_entries);
  std::vector<std::uint8_t> reverse(num_entries);
  {
    std::vector<std::uint64_t> cursor(offsets.begin(), offsets.end() - 1);
    for (const Edge& e : edges) {
      if (e.u == e.v) continue;
      std::uint64_t i = cursor[e.u]++;
      neighbors[i] = e.v;
      weights[i] = e.weight;
      reverse[i] = 0;
      i = cursor[e.v]++;
      neighbors[i] = e.u;
      weights[i] = e.weight;
      reverse[i] = 1;
    }
  }

  // Sort and merge each bucket in place; `unique_count[v]` is the merged
  // length.
  std::vector<std::uint64_t> unique_count(n + 1, 0);
#pragma omp parallel
  {
    std::vector<Entry> scratch;
#pragma omp for schedule(dynamic, 256)
    for (std::int64_t vi = 0; vi < static_cast<std::int64_t>(n); ++vi) {
      const auto v = static_cast<std::size_t>(vi);
      const std::uint64_t lo = offsets[v];
      const std::uint64_t hi = offsets[v + 1];
      scratch.clear();
      for (std::uint64_t i = lo; i < hi; ++i) {
        scratch.push_back({neighbors[i], reverse[i] != 0, weights[i]});
      }
      std::stable_sort(
          scratch.begin(), scratch.end(),
          [](const Entry& a, const Entry& b) { return a.neighbor < b.neighbor; });
      std::uint64_t out = lo;
      for (std::size_t i = 0; i < scratch.size();) {
        std::size_t j = i;
        double forward = 0;
        double backward = 0;
        bool has_forward = false;
        bool has_backward = false;
        for (; j < scratch.size() && scratch[j].neighbor == scratch[i].neighbor;
             ++j) {
          if (scratch[j].reverse) {
            backward += scratch[j].weight;
            has_backward = true;
          } else {
            forward += scratch[j].weight;
            has_forward = true;
          }
        }
        double w = forward + backward;
        if (has_forward && has_backward) w /= 2;
        neighbors[out] = scratch[i].neighbor;
        weights[out] = w;
        ++out;
        i = j;
      }
      unique_count[v] = out - lo;
    }
  }
  reverse.clear();
  reverse.shrink_to_fit();

  std::vector<std::uint64_t> compact_offsets(unique_count);
  const std::uint64_t total = ExclusiveScan(compact_offsets);
  std::vector<NodeId> compact_neighbors(total);
  std::vector<double> compact_weights(total);
  ParallelFor(0, n, [&](std::size_t v) {
    const std::uint64_t src = offsets[v];
    const std::uint64_t dst = compact_offsets[v];
    for (std::uint64_t i = 0; i < unique_count[v]; ++i) {
      compact_neighbors[dst + i] = neighbors[src + i];
      compact_weights[dst + i] = weights[src + i];
    }
  });
  return WeightedGraph::FromCsr(std::move(compact_offsets),
                                std::move(compact_neighbors),
                                std::move(compact_weights));
}

std::vector<double> UnitVertexWeights(const WeightedGraph& graph) {
  return std::vector<double>(graph.NumNodes(), 1.0);
}

}  // namespace lambdacc
