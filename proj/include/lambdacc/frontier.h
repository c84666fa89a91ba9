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

#ifndef LAMBDACC_FRONTIER_H_
#define LAMBDACC_FRONTIER_H_

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "absl/status/statusor.h"
#include "lambdacc/graph.h"

namespace lambdacc {

// True when a subset with `size` members whose degrees sum to `degree_sum`
// should be held densely: size + degree_sum > m / 20.
bool PreferDenseFrontier(std::size_t size, std::uint64_t degree_sum,
                         std::size_t num_edges);

// A subset of the vertices of a graph, stored either as a sorted id list
// (sparse) or as a membership mask (dense).
class Frontier {
 public:
  enum class Representation { kSparse, kDense };

  // Deduplicates `ids` and picks the representation with
  // PreferDenseFrontier. Fails if any id is >= graph.NumNodes().
  static absl::StatusOr<Frontier> FromMembers(std::span<const NodeId> ids,
                                              const WeightedGraph& graph);
  // Takes ownership of a membership mask of length graph.NumNodes().
  static Frontier FromMask(std::vector<std::uint8_t> mask,
                           const WeightedGraph& graph);
  static Frontier All(std::size_t num_nodes);
  static Frontier None(std::size_t num_nodes);

  std::size_t Size() const { return size_; }
  bool Empty() const { return size_ == 0; }
  std::size_t NumNodes() const { return num_nodes_; }
  Representation representation() const { return representation_; }

  bool Contains(NodeId v) const;
  // Members in ascending order.
  std::vector<NodeId> Members() const;

 private:
  Frontier(Representation representation, std::size_t num_nodes)
      : representation_(representation), num_nodes_(num_nodes) {}

  Representation representation_;
  std::size_t num_nodes_ = 0;
  std::size_t size_ = 0;
  std::vector<NodeId> sparse_;
  std::vector<std::uint8_t> dense_;
};

}  // namespace lambdacc

#endif  // LAMBDACC_FRONTIER_H_
