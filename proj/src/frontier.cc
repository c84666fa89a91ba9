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

#include "lambdacc/frontier.h"

#include <algorithm>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "absl/strings/str_cat.h"
#include "lambdacc/parallel.h"

namespace lambdacc {

bool PreferDenseFrontier(std::size_t size, std::uint64_t degree_sum,
                         std::size_t num_edges) {
  return static_cast<double>(size) + static_cast<double>(degree_sum) >
         static_cast<double>(num_edges) / 20.0;
}

absl::StatusOr<Frontier> Frontier::FromMembers(std::span<const NodeId> ids,
                                               const WeightedGraph& graph) {
  const std::size_t n = graph.NumNodes();
  for (NodeId v : ids) {
    if (v >= n) {
      return absl::OutOfRangeError(
          absl::StrCat("frontier member ", v, " >= n = ", n));
    }
  }
  std::vector<NodeId> sorted(ids.begin(), ids.end());
  std::sort(sorted.begin(), sorted.end());
  sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());

  std::uint64_t degree_sum = 0;
  for (NodeId v : sorted) degree_sum += graph.Degree(v);
  if (PreferDenseFrontier(sorted.size(), degree_sum, graph.NumEdges())) {
    Frontier frontier(Representation::kDense, n);
    frontier.dense_.assign(n, 0);
    for (NodeId v : sorted) frontier.dense_[v] = 1;
    frontier.size_ = sorted.size();
    return frontier;
  }
  Frontier frontier(Representation::kSparse, n);
  frontier.size_ = sorted.size();
  frontier.sparse_ = std::move(sorted);
  return frontier;
}

Frontier Frontier::FromMask(std::vector<std::uint8_t> mask,
                            const WeightedGraph& graph) {
  const std::size_t n = graph.NumNodes();
  const std::size_t size = static_cast<std::size_t>(
      BlockedSum(n, [&](std::size_t v) { return mask[v] != 0 ? 1.0 : 0.0; }));
  const double degree_sum = BlockedSum(n, [&](std::size_t v) {
    return mask[v] != 0 ? static_cast<double>(graph.Degree(
                              static_cast<NodeId>(v)))
                        : 0.0;
  });
  if (PreferDenseFrontier(size, static_cast<std::uint64_t>(degree_sum),
                          graph.NumEdges())) {
    Frontier frontier(Representation::kDense, n);
    frontier.dense_ = std::move(mask);
    frontier.size_ = size;
    return frontier;
  }
  Frontier frontier(Representation::kSparse, n);
  frontier.sparse_.reserve(size);
  for (std::size_t v = 0; v < n; ++v) {
    if (mask[v] != 0) frontier.sparse_.push_back(static_cast<NodeId>(v));
  }
  frontier.size_ = size;
  return frontier;
}

Frontier Frontier::All(std::size_t num_nodes) {
  Frontier frontier(Representation::kDense, num_nodes);
  frontier.dense_.assign(num_nodes, 1);
  frontier.size_ = num_nodes;
  return frontier;
}

Frontier Frontier::None(std::size_t num_nodes) {
  return Frontier(Representation::kSparse, num_nodes);
}

bool Frontier::Contains(NodeId v) const {
  if (v >= num_nodes_) return false;
  if (representation_ == Representation::kDense) return dense_[v] != 0;
  return std::binary_search(sparse_.begin(), sparse_.end(), v);
}

std::vector<NodeId> Frontier::Members() const {
  if (representation_ == Representation::kSparse) return sparse_;
  std::vector<NodeId> members;
  members.reserve(size_);
  for (std::size_t v = 0; v < num_nodes_; ++v) {
    if (dense_[v] != 0) members.push_back(static_cast<NodeId>(v));
  }
  return members;
}

}  // namespace lambdacc
