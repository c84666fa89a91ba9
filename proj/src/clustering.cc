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

#include "lambdacc/clustering.h"

#include <algorithm>
#include <cstdint>
#include <limits>
#include <span>
#include <utility>
#include <vector>

#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "absl/strings/str_cat.h"

namespace lambdacc {

Clustering Clustering::Singletons(std::span<const double> node_weights) {
  Clustering c;
  const std::size_t n = node_weights.size();
  c.assignment_.resize(n);
  for (std::size_t v = 0; v < n; ++v) c.assignment_[v] = static_cast<ClusterId>(v);
  c.mass_.assign(node_weights.begin(), node_weights.end());
  c.size_.assign(n, 1);
  c.num_clusters_ = n;
  c.in_empty_.assign(n, 0);
  return c;
}

absl::StatusOr<Clustering> Clustering::FromAssignment(
    std::vector<ClusterId> assignment, std::span<const double> node_weights) {
  if (assignment.size() != node_weights.size()) {
    return absl::InvalidArgumentError(
        absl::StrCat("assignment has ", assignment.size(),
                     " entries but there are ", node_weights.size(),
                     " vertex weights"));
  }
  const std::size_t n = assignment.size();
  std::vector<double> mass(n, 0.0);
  for (std::size_t v = 0; v < n; ++v) {
    if (assignment[v] >= n) {
      return absl::InvalidArgumentError(absl::StrCat(
          "cluster id ", assignment[v], " of vertex ", v, " is >= n = ", n));
    }
    mass[assignment[v]] += node_weights[v];
  }
  return FromAssignmentAndMasses(std::move(assignment), std::move(mass));
}

absl::StatusOr<Clustering> Clustering::FromAssignmentAndMasses(
    std::vector<ClusterId> assignment, std::vector<double> cluster_mass) {
  const std::size_t n = assignment.size();
  if (cluster_mass.size() != n) {
    return absl::InvalidArgumentError("cluster mass table must have length n");
  }
  Clustering c;
  c.size_.assign(n, 0);
  for (std::size_t v = 0; v < n; ++v) {
    if (assignment[v] >= n) {
      return absl::InvalidArgumentError(absl::StrCat(
          "cluster id ", assignment[v], " of vertex ", v, " is >= n = ", n));
    }
    ++c.size_[assignment[v]];
  }
  c.assignment_ = std::move(assignment);
  c.mass_ = std::move(cluster_mass);
  c.num_clusters_ = 0;
  for (std::size_t id = 0; id < n; ++id) {
    if (c.size_[id] > 0) {
      ++c.num_clusters_;
    } else {
      c.mass_[id] = 0;
    }
  }
  c.RebuildEmptyList();
  return c;
}

void Clustering::RebuildEmptyList() {
  const std::size_t n = assignment_.size();
  in_empty_.assign(n, 0);
  empty_.clear();
  for (std::size_t id = n; id-- > 0;) {
    if (size_[id] == 0) {
      empty_.push_back(static_cast<ClusterId>(id));
      in_empty_[id] = 1;
    }
  }
}

void Clustering::Move(NodeId v, ClusterId target, double node_weight) {
  const ClusterId source = assignment_[v];
  if (source == target) return;
  mass_[source] -= node_weight;
  if (--size_[source] == 0) {
    mass_[source] = 0;
    --num_clusters_;
    if (!in_empty_[source]) {
      in_empty_[source] = 1;
      empty_.push_back(source);
    }
  }
  if (size_[target]++ == 0) {
    ++num_clusters_;
    mass_[target] = 0;
  }
  mass_[target] += node_weight;
  assignment_[v] = target;
}

ClusterId Clustering::EmptyCluster() {
  while (!empty_.empty() && size_[empty_.back()] != 0) {
    in_empty_[empty_.back()] = 0;
    empty_.pop_back();
  }
  if (empty_.empty()) return std::numeric_limits<ClusterId>::max();
  return empty_.back();
}

std::vector<std::vector<NodeId>> Clustering::Clusters() const {
  const std::vector<ClusterId> canonical = CanonicalAssignment();
  std::vector<std::vector<NodeId>> clusters(num_clusters_);
  for (std::size_t v = 0; v < canonical.size(); ++v) {
    clusters[canonical[v]].push_back(static_cast<NodeId>(v));
  }
  return clusters;
}

std::vector<ClusterId> Clustering::CanonicalAssignment() const {
  constexpr ClusterId kUnset = std::numeric_limits<ClusterId>::max();
  std::vector<ClusterId> relabel(assignment_.size(), kUnset);
  std::vector<ClusterId> canonical(assignment_.size());
  ClusterId next = 0;
  for (std::size_t v = 0; v < assignment_.size(); ++v) {
    ClusterId& r = relabel[assignment_[v]];
    if (r == kUnset) r = next++;
    canonical[v] = r;
  }
  return canonical;
}

bool SamePartition(std::span<const ClusterId> a, std::span<const ClusterId> b) {
  if (a.size() != b.size()) return false;
  constexpr ClusterId kUnset = std::numeric_limits<ClusterId>::max();
  ClusterId max_a = 0, max_b = 0;
  for (ClusterId x : a) max_a = std::max(max_a, x);
  for (ClusterId x : b) max_b = std::max(max_b, x);
  std::vector<ClusterId> a_to_b(a.empty() ? 0 : max_a + std::size_t{1}, kUnset);
  std::vector<ClusterId> b_to_a(b.empty() ? 0 : max_b + std::size_t{1}, kUnset);
  for (std::size_t v = 0; v < a.size(); ++v) {
    if (a_to_b[a[v]] == kUnset && b_to_a[b[v]] == kUnset) {
      a_to_b[a[v]] = b[v];
      b_to_a[b[v]] = a[v];
    } else if (a_to_b[a[v]] != b[v] || b_to_a[b[v]] != a[v]) {
      return false;
    }
  }
  return true;
}

}  // namespace lambdacc
