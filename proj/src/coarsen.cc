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

#include "coarsen.h"

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "absl/status/status.h"
#include "absl/strings/str_cat.h"
#include "lambdacc/parallel.h"

namespace lambdacc::internal {

WeightedGraph GraphFromSortedEdges(std::size_t num_nodes,
                                   std::span<const CoarseEdge> edges) {
  std::vector<std::uint64_t> offsets(num_nodes + 1, 0);
  for (const CoarseEdge& e : edges) {
    ++offsets[e.a];
    ++offsets[e.b];
  }
  const std::uint64_t total = ExclusiveScan(offsets);
  std::vector<NodeId> neighbors(total);
  std::vector<double> weights(total);
  // Edges sorted by (a, b) reach every vertex in ascending neighbor order:
  // all (y, x) with y < x precede the (x, z) entries.
  std::vector<std::uint64_t> cursor(offsets.begin(), offsets.end() - 1);
  for (const CoarseEdge& e : edges) {
    std::uint64_t i = cursor[e.a]++;
    neighbors[i] = e.b;
    weights[i] = e.weight;
    i = cursor[e.b]++;
    neighbors[i] = e.a;
    weights[i] = e.weight;
  }
  return WeightedGraph::FromCsr(std::move(offsets), std::move(neighbors),
                                std::move(weights));
}

absl::Status CheckMapping(const Clustering& fine,
                          std::span<const NodeId> mapping,
                          std::size_t num_coarse) {
  const std::size_t n = fine.NumNodes();
  if (mapping.size() != n) {
    return absl::InvalidArgumentError(absl::StrCat(
        "mapping has ", mapping.size(), " entries, clustering has ", n));
  }
  if (num_coarse != fine.NumClusters()) {
    return absl::InvalidArgumentError(
        absl::StrCat("coarse clustering has ", num_coarse,
                     " vertices but the fine clustering has ",
                     fine.NumClusters(), " clusters"));
  }
  constexpr NodeId kUnset = ~NodeId{0};
  std::vector<NodeId> image(n, kUnset);
  for (std::size_t v = 0; v < n; ++v) {
    if (mapping[v] >= num_coarse) {
      return absl::InvalidArgumentError(
          absl::StrCat("mapping of vertex ", v, " out of range"));
    }
    NodeId& slot = image[fine.ClusterOf(static_cast<NodeId>(v))];
    if (slot == kUnset) {
      slot = mapping[v];
    } else if (slot != mapping[v]) {
      return absl::InvalidArgumentError(absl::StrCat(
          "mapping splits cluster ", fine.ClusterOf(static_cast<NodeId>(v))));
    }
  }
  return absl::OkStatus();
}

absl::StatusOr<Clustering> FlattenAssignment(std::span<const NodeId> mapping,
                                             const Clustering& coarse,
                                             bool parallel) {
  const std::size_t n = mapping.size();
  std::vector<ClusterId> assignment(n);
  auto assign = [&](std::size_t v) {
    assignment[v] = coarse.ClusterOf(mapping[v]);
  };
  if (parallel) {
    ParallelFor(0, n, assign, 4096);
  } else {
    for (std::size_t v = 0; v < n; ++v) assign(v);
  }
  std::vector<double> masses(n, 0.0);
  const auto coarse_masses = coarse.Masses();
  for (std::size_t c = 0; c < coarse_masses.size() && c < n; ++c) {
    masses[c] = coarse_masses[c];
  }
  return Clustering::FromAssignmentAndMasses(std::move(assignment),
                                             std::move(masses));
}

}  // namespace lambdacc::internal
