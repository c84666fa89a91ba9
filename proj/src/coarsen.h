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

#ifndef LAMBDACC_SRC_COARSEN_H_
#define LAMBDACC_SRC_COARSEN_H_

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "lambdacc/clustering.h"
#include "lambdacc/graph.h"

namespace lambdacc::internal {

// Undirected coarse edge with a < b.
struct CoarseEdge {
  NodeId a;
  NodeId b;
  double weight;
};

inline std::uint64_t PairKey(NodeId a, NodeId b) {
  return (static_cast<std::uint64_t>(a) << 32) | b;
}

// CSR graph on `num_nodes` vertices from edges sorted by (a, b) without
// duplicates.
WeightedGraph GraphFromSortedEdges(std::size_t num_nodes,
                                   std::span<const CoarseEdge> edges);

// Checks that `mapping` sends the members of each cluster of `fine` to one
// coarse vertex and that coarse vertex ids are < `num_coarse`.
absl::Status CheckMapping(const Clustering& fine,
                          std::span<const NodeId> mapping,
                          std::size_t num_coarse);

// Clustering of the fine level that puts v in coarse.ClusterOf(mapping[v]).
absl::StatusOr<Clustering> FlattenAssignment(std::span<const NodeId> mapping,
                                             const Clustering& coarse,
                                             bool parallel);

}  // namespace lambdacc::internal

#endif  // LAMBDACC_SRC_COARSEN_H_
