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

#include "lambdacc/eval.h"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <map>
#include <span>
#include <vector>

#include "absl/container/flat_hash_map.h"
#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "absl/strings/str_cat.h"
#include "lambdacc/parallel.h"
#include "lambdacc/status_macros.h"

namespace lambdacc {
namespace {

// Sparse contingency table of two labelings. Ordered maps keep floating-point
// sums independent of hash iteration order.
struct Contingency {
  std::map<std::uint64_t, std::int64_t> cells;
  std::map<ClusterId, std::int64_t> rows;
  std::map<ClusterId, std::int64_t> cols;
  std::int64_t total = 0;
};

absl::StatusOr<Contingency> BuildContingency(std::span<const ClusterId> a,
                                             std::span<const ClusterId> b) {
  if (a.size() != b.size()) {
    return absl::InvalidArgumentError(absl::StrCat(
        "labelings have different lengths: ", a.size(), " vs ", b.size()));
  }
  Contingency table;
  for (std::size_t i = 0; i < a.size(); ++i) {
    ++table.cells[(static_cast<std::uint64_t>(a[i]) << 32) | b[i]];
    ++table.rows[a[i]];
    ++table.cols[b[i]];
  }
  table.total = static_cast<std::int64_t>(a.size());
  return table;
}

double Choose2(std::int64_t x) {
  return static_cast<double>(x) * static_cast<double>(x - 1) / 2.0;
}

double Entropy(const std::map<ClusterId, std::int64_t>& counts,
               double total) {
  double h = 0.0;
  for (const auto& [label, count] : counts) {
    const double p = static_cast<double>(count) / total;
    h -= p * std::log(p);
  }
  return h;
}

}  // namespace

absl::Status ValidateGroundTruth(const GroundTruth& truth,
                                 std::size_t num_nodes) {
  for (std::size_t i = 0; i < truth.communities.size(); ++i) {
    const auto& community = truth.communities[i];
    if (community.empty()) {
      return absl::InvalidArgumentError(
          absl::StrCat("ground-truth community ", i, " is empty"));
    }
    for (NodeId v : community) {
      if (v >= num_nodes) {
        return absl::OutOfRangeError(absl::StrCat(
            "ground-truth community ", i, " has vertex ", v,
            " outside [0, ", num_nodes, ")"));
      }
    }
  }
  return absl::OkStatus();
}

absl::StatusOr<PrecisionRecall> AvgPrecisionRecall(
    std::span<const ClusterId> assignment, const GroundTruth& truth) {
  if (truth.communities.empty()) {
    return absl::InvalidArgumentError("ground truth has no communities");
  }
  RETURN_IF_ERROR(ValidateGroundTruth(truth, assignment.size()));
  absl::flat_hash_map<ClusterId, std::int64_t> cluster_size;
  for (ClusterId c : assignment) ++cluster_size[c];

  const std::size_t num = truth.communities.size();
  std::vector<double> precision(num);
  std::vector<double> recall(num);
  ParallelFor(0, num, [&](std::size_t t) {
    // Duplicate members are counted once.
    std::vector<NodeId> members = truth.communities[t];
    std::sort(members.begin(), members.end());
    members.erase(std::unique(members.begin(), members.end()), members.end());
    absl::flat_hash_map<ClusterId, std::int64_t> overlap;
    for (NodeId v : members) ++overlap[assignment[v]];
    ClusterId best = std::numeric_limits<ClusterId>::max();
    std::int64_t best_overlap = 0;
    for (const auto& [c, count] : overlap) {
      if (count > best_overlap || (count == best_overlap && c < best)) {
        best = c;
        best_overlap = count;
      }
    }
    precision[t] = static_cast<double>(best_overlap) /
                   static_cast<double>(cluster_size.at(best));
    recall[t] = static_cast<double>(best_overlap) /
                static_cast<double>(members.size());
  }, 16);

  PrecisionRecall result;
  for (std::size_t t = 0; t < num; ++t) {
    result.precision += precision[t];
    result.recall += recall[t];
  }
  result.precision /= static_cast<double>(num);
  result.recall /= static_cast<double>(num);
  return result;
}

absl::StatusOr<double> AdjustedRandIndex(std::span<const ClusterId> a,
                                         std::span<const ClusterId> b) {
  ASSIGN_OR_RETURN(Contingency table, BuildContingency(a, b));
  double index = 0.0;
  for (const auto& [key, count] : table.cells) index += Choose2(count);
  double sum_rows = 0.0;
  for (const auto& [label, count] : table.rows) sum_rows += Choose2(count);
  double sum_cols = 0.0;
  for (const auto& [label, count] : table.cols) sum_cols += Choose2(count);
  const double pairs = Choose2(table.total);
  const double expected = pairs > 0 ? sum_rows * sum_cols / pairs : 0.0;
  const double max_index = (sum_rows + sum_cols) / 2.0;
  const double denominator = max_index - expected;
  if (denominator == 0.0) return 1.0;
  return (index - expected) / denominator;
}

absl::StatusOr<double> NormalizedMutualInformation(
    std::span<const ClusterId> a, std::span<const ClusterId> b) {
  ASSIGN_OR_RETURN(Contingency table, BuildContingency(a, b));
  if (table.total == 0) return 1.0;
  const auto total = static_cast<double>(table.total);
  const double h_a = Entropy(table.rows, total);
  const double h_b = Entropy(table.cols, total);
  if (h_a == 0.0 && h_b == 0.0) return 1.0;
  double mi = 0.0;
  for (const auto& [key, count] : table.cells) {
    const auto row = static_cast<ClusterId>(key >> 32);
    const auto col = static_cast<ClusterId>(key & 0xffffffffu);
    const double joint = static_cast<double>(count);
    mi += joint / total *
          std::log(joint * total /
                   (static_cast<double>(table.rows.at(row)) *
                    static_cast<double>(table.cols.at(col))));
  }
  const double nmi = mi / ((h_a + h_b) / 2.0);
  return std::clamp(nmi, 0.0, 1.0);
}

ClusterStats ComputeClusterStats(std::span<const ClusterId> assignment) {
  absl::flat_hash_map<ClusterId, std::size_t> sizes;
  for (ClusterId c : assignment) ++sizes[c];
  ClusterStats stats;
  stats.num_clusters = sizes.size();
  if (sizes.empty()) return stats;
  stats.min_size = std::numeric_limits<std::size_t>::max();
  for (const auto& [c, size] : sizes) {
    stats.min_size = std::min(stats.min_size, size);
    stats.max_size = std::max(stats.max_size, size);
  }
  stats.mean_size = static_cast<double>(assignment.size()) /
                    static_cast<double>(sizes.size());
  return stats;
}

}  // namespace lambdacc
