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

#ifndef LAMBDACC_IO_H_
#define LAMBDACC_IO_H_

#include <istream>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "absl/container/flat_hash_map.h"
#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "json.hpp"
#include "lambdacc/clustering.h"
#include "lambdacc/eval.h"
#include "lambdacc/graph.h"

namespace lambdacc {

// Correspondence between external vertex ids (as written in input files) and
// dense internal ids.
//
// Integer ids that already cover [0, n) map to themselves. Other integer ids
// are numbered in ascending numeric order, and non-integer ids in order of
// first appearance.
class IdMap {
 public:
  IdMap() = default;
  static IdMap Identity(std::size_t n);
  static IdMap FromExternal(std::vector<std::string> external);

  std::size_t size() const { return external_.size(); }
  bool is_identity() const { return identity_; }
  std::optional<NodeId> Find(std::string_view external) const;
  const std::string& External(NodeId v) const { return external_[v]; }

 private:
  std::vector<std::string> external_;
  absl::flat_hash_map<std::string, NodeId> lookup_;
  bool identity_ = false;
};

struct LoadedGraph {
  WeightedGraph graph;
  IdMap ids;
};

// Edge list: one "u v" or "u v w" line per edge; '#' starts a comment line.
// Without `weighted`, a third column is ignored and every edge gets weight 1.
absl::StatusOr<LoadedGraph> ParseEdgeList(std::istream& in, bool weighted);
absl::StatusOr<LoadedGraph> ReadEdgeList(const std::string& path,
                                         bool weighted);

// One community per line, members whitespace-separated; blank lines skipped.
absl::StatusOr<GroundTruth> ParseGroundTruth(std::istream& in,
                                             const IdMap& ids);
absl::StatusOr<GroundTruth> ReadGroundTruth(const std::string& path,
                                            const IdMap& ids);

// "vertex label" per line; every vertex needs exactly one label. Labels are
// arbitrary tokens, numbered in order of first appearance.
absl::StatusOr<std::vector<ClusterId>> ParseLabels(std::istream& in,
                                                   const IdMap& ids);
absl::StatusOr<std::vector<ClusterId>> ReadLabels(const std::string& path,
                                                  const IdMap& ids);

// "vertex cluster" per line in vertex order, external vertex ids, cluster ids
// renumbered by first appearance.
std::string FormatClustering(std::span<const ClusterId> assignment,
                             const IdMap& ids);
absl::Status WriteClustering(const std::string& path,
                             std::span<const ClusterId> assignment,
                             const IdMap& ids);

// Unrequested metrics are written as null.
nlohmann::json MetricsToJson(const EvalReport& report);
absl::StatusOr<EvalReport> MetricsFromJson(const nlohmann::json& json);
absl::Status WriteMetrics(const std::string& path, const EvalReport& report);

// Each undirected edge once as "u v w" with u < v.
absl::Status WriteEdgeList(const std::string& path,
                           const WeightedGraph& graph);
// "internal external" per line.
absl::Status WriteIdMap(const std::string& path, const IdMap& ids);

absl::StatusOr<std::string> ReadFile(const std::string& path);
absl::Status WriteFile(const std::string& path, std::string_view contents);

}  // namespace lambdacc

#endif  // LAMBDACC_IO_H_
