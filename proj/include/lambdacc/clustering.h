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

#ifndef LAMBDACC_CLUSTERING_H_
#define LAMBDACC_CLUSTERING_H_

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "absl/status/statusor.h"
#include "lambdacc/graph.h"

namespace lambdacc {

using ClusterId = std::uint32_t;

// Assignment of vertices to clusters together with per-cluster mass K_c (the
// sum of vertex weights of the members) and member counts.
//
// Cluster ids live in [0, n), so with n vertices there is always an id free
// for a new cluster whenever some cluster has two or more members.
class Clustering {
 public:
  Clustering() = default;

  static Clustering Singletons(std::span<const double> node_weights);
  // Fails if the lengths differ or some id is >= n.
  static absl::StatusOr<Clustering> FromAssignment(
      std::vector<ClusterId> assignment, std::span<const double> node_weights);
  // Like FromAssignment, but with masses supplied per cluster id rather than
  // derived from vertex weights. `cluster_mass` must have length n.
  static absl::StatusOr<Clustering> FromAssignmentAndMasses(
      std::vector<ClusterId> assignment, std::vector<double> cluster_mass);

  std::size_t NumNodes() const { return assignment_.size(); }
  std::size_t NumClusters() const { return num_clusters_; }

  ClusterId ClusterOf(NodeId v) const { return assignment_[v]; }
  double ClusterMass(ClusterId c) const { return mass_[c]; }
  std::uint32_t ClusterSize(ClusterId c) const { return size_[c]; }

  std::span<const ClusterId> Assignment() const { return assignment_; }
  std::span<const double> Masses() const { return mass_; }

  // Moves v into `target` (which may be empty), updating masses and sizes.
  void Move(NodeId v, ClusterId target, double node_weight);

  // Some id whose cluster is currently empty. Requires that one exists.
  ClusterId EmptyCluster();

  // Non-empty clusters as member lists, ordered by smallest member.
  std::vector<std::vector<NodeId>> Clusters() const;

  // Relabels cluster ids densely in order of first appearance by vertex id.
  std::vector<ClusterId> CanonicalAssignment() const;

 private:
  void RebuildEmptyList();

  std::vector<ClusterId> assignment_;
  std::vector<double> mass_;
  std::vector<std::uint32_t> size_;
  std::size_t num_clusters_ = 0;
  // Candidate empty ids; entries may have been refilled since they were
  // pushed and are discarded lazily.
  std::vector<ClusterId> empty_;
  std::vector<std::uint8_t> in_empty_;
};

// Same partition (ignoring cluster ids).
bool SamePartition(std::span<const ClusterId> a, std::span<const ClusterId> b);

}  // namespace lambdacc

#endif  // LAMBDACC_CLUSTERING_H_
