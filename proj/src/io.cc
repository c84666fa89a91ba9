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

#include "lambdacc/io.h"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <iterator>
#include <limits>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "absl/strings/numbers.h"
#include "absl/strings/str_cat.h"
#include "absl/strings/str_split.h"
#include "absl/strings/string_view.h"
#include "lambdacc/status_macros.h"

namespace lambdacc {
namespace {

std::vector<absl::string_view> Tokens(absl::string_view line) {
  return absl::StrSplit(line, absl::ByAnyChar(" \t\r"), absl::SkipEmpty());
}

bool IsComment(const std::vector<absl::string_view>& tokens) {
  return tokens.empty() || tokens.front().front() == '#';
}

// Calls f(line_number, tokens) for every non-blank, non-comment line.
template <typename F>
absl::Status ForEachLine(absl::string_view text, F&& f) {
  std::size_t line_number = 0;
  for (absl::string_view line : absl::StrSplit(text, '\n')) {
    ++line_number;
    const auto tokens = Tokens(line);
    if (IsComment(tokens)) continue;
    RETURN_IF_ERROR(f(line_number, tokens));
  }
  return absl::OkStatus();
}

absl::Status LineError(std::size_t line_number, absl::string_view what) {
  return absl::InvalidArgumentError(
      absl::StrCat("line ", line_number, ": ", what));
}

std::string Slurp(std::istream& in) {
  return std::string(std::istreambuf_iterator<char>(in),
                     std::istreambuf_iterator<char>());
}

// Shortest text that parses back to exactly x.
std::string ShortestDouble(double x) {
  char buffer[32];
  const auto result = std::to_chars(buffer, buffer + sizeof(buffer), x);
  return std::string(buffer, result.ptr);
}

struct RawEdge {
  absl::string_view u;
  absl::string_view v;
  double weight;
};

absl::StatusOr<LoadedGraph> ParseEdgeListText(absl::string_view text,
                                              bool weighted) {
  std::vector<RawEdge> raw;
  RETURN_IF_ERROR(ForEachLine(
      text, [&](std::size_t line_number,
                const std::vector<absl::string_view>& tokens) -> absl::Status {
        if (tokens.size() < 2 || tokens.size() > 3) {
          return LineError(line_number,
                           absl::StrCat("expected \"u v\" or \"u v w\", got ",
                                        tokens.size(), " fields"));
        }
        double weight = 1.0;
        if (weighted && tokens.size() == 3) {
          if (!absl::SimpleAtod(tokens[2], &weight) || !std::isfinite(weight)) {
            return LineError(line_number, absl::StrCat("bad weight \"",
                                                       tokens[2], "\""));
          }
        }
        raw.push_back({tokens[0], tokens[1], weight});
        return absl::OkStatus();
      }));

  if (raw.empty()) return absl::InvalidArgumentError("empty graph");

  bool all_integer = true;
  std::vector<std::uint64_t> numeric;
  numeric.reserve(2 * raw.size());
  for (const RawEdge& e : raw) {
    std::uint64_t a = 0;
    std::uint64_t b = 0;
    if (!absl::SimpleAtoi(e.u, &a) || !absl::SimpleAtoi(e.v, &b)) {
      all_integer = false;
      break;
    }
    numeric.push_back(a);
    numeric.push_back(b);
  }

  LoadedGraph loaded;
  std::vector<Edge> edges(raw.size());
  if (all_integer) {
    std::vector<std::uint64_t> distinct = numeric;
    std::sort(distinct.begin(), distinct.end());
    distinct.erase(std::unique(distinct.begin(), distinct.end()),
                   distinct.end());
    const bool dense = distinct.empty() || distinct.back() + 1 == distinct.size();
    if (distinct.size() > std::numeric_limits<NodeId>::max()) {
      return absl::InvalidArgumentError("too many vertices");
    }
    if (dense) {
      loaded.ids = IdMap::Identity(distinct.size());
    } else {
      std::vector<std::string> external;
      external.reserve(distinct.size());
      for (std::uint64_t id : distinct) external.push_back(absl::StrCat(id));
      loaded.ids = IdMap::FromExternal(std::move(external));
    }
    for (std::size_t i = 0; i < raw.size(); ++i) {
      NodeId u;
      NodeId v;
      if (dense) {
        u = static_cast<NodeId>(numeric[2 * i]);
        v = static_cast<NodeId>(numeric[2 * i + 1]);
      } else {
        u = static_cast<NodeId>(std::lower_bound(distinct.begin(),
                                                 distinct.end(),
                                                 numeric[2 * i]) -
                                distinct.begin());
        v = static_cast<NodeId>(std::lower_bound(distinct.begin(),
                                                 distinct.end(),
                                                 numeric[2 * i + 1]) -
                                distinct.begin());
      }
      edges[i] = {u, v, raw[i].weight};
    }
  } else {
    absl::flat_hash_map<absl::string_view, NodeId> seen;
    std::vector<std::string> external;
    auto intern = [&](absl::string_view token) {
      auto [it, inserted] =
          seen.try_emplace(token, static_cast<NodeId>(external.size()));
      if (inserted) external.emplace_back(token);
      return it->second;
    };
    for (std::size_t i = 0; i < raw.size(); ++i) {
      const NodeId u = intern(raw[i].u);
      const NodeId v = intern(raw[i].v);
      edges[i] = {u, v, raw[i].weight};
    }
    loaded.ids = IdMap::FromExternal(std::move(external));
  }
  ASSIGN_OR_RETURN(loaded.graph, BuildGraph(edges, loaded.ids.size()));
  return loaded;
}

absl::StatusOr<NodeId> Lookup(const IdMap& ids, absl::string_view token,
                              std::size_t line_number) {
  const auto id = ids.Find(std::string_view(token.data(), token.size()));
  if (!id.has_value()) {
    return LineError(line_number,
                     absl::StrCat("unknown vertex id \"", token, "\""));
  }
  return *id;
}

absl::StatusOr<GroundTruth> ParseGroundTruthText(absl::string_view text,
                                                 const IdMap& ids) {
  GroundTruth truth;
  RETURN_IF_ERROR(ForEachLine(
      text, [&](std::size_t line_number,
                const std::vector<absl::string_view>& tokens) -> absl::Status {
        std::vector<NodeId> community;
        community.reserve(tokens.size());
        for (absl::string_view token : tokens) {
          ASSIGN_OR_RETURN(NodeId v, Lookup(ids, token, line_number));
          community.push_back(v);
        }
        truth.communities.push_back(std::move(community));
        return absl::OkStatus();
      }));
  return truth;
}

absl::StatusOr<std::vector<ClusterId>> ParseLabelsText(absl::string_view text,
                                                       const IdMap& ids) {
  constexpr ClusterId kUnset = std::numeric_limits<ClusterId>::max();
  std::vector<ClusterId> labels(ids.size(), kUnset);
  absl::flat_hash_map<std::string, ClusterId> label_ids;
  RETURN_IF_ERROR(ForEachLine(
      text, [&](std::size_t line_number,
                const std::vector<absl::string_view>& tokens) -> absl::Status {
        if (tokens.size() != 2) {
          return LineError(line_number, "expected \"vertex label\"");
        }
        ASSIGN_OR_RETURN(NodeId v, Lookup(ids, tokens[0], line_number));
        if (labels[v] != kUnset) {
          return LineError(line_number, absl::StrCat("vertex \"", tokens[0],
                                                     "\" labeled twice"));
        }
        auto [it, inserted] = label_ids.try_emplace(
            std::string(tokens[1]), static_cast<ClusterId>(label_ids.size()));
        labels[v] = it->second;
        return absl::OkStatus();
      }));
  for (std::size_t v = 0; v < labels.size(); ++v) {
    if (labels[v] == kUnset) {
      return absl::InvalidArgumentError(absl::StrCat(
          "vertex \"", ids.External(static_cast<NodeId>(v)), "\" has no label"));
    }
  }
  return labels;
}

}  // namespace

IdMap IdMap::Identity(std::size_t n) {
  IdMap map;
  map.identity_ = true;
  map.external_.reserve(n);
  for (std::size_t v = 0; v < n; ++v) map.external_.push_back(absl::StrCat(v));
  return map;
}

IdMap IdMap::FromExternal(std::vector<std::string> external) {
  IdMap map;
  map.external_ = std::move(external);
  map.lookup_.reserve(map.external_.size());
  for (std::size_t v = 0; v < map.external_.size(); ++v) {
    map.lookup_.emplace(map.external_[v], static_cast<NodeId>(v));
  }
  map.identity_ = false;
  return map;
}

std::optional<NodeId> IdMap::Find(std::string_view external_id) const {
  const absl::string_view external(external_id.data(), external_id.size());
  if (identity_) {
    std::uint64_t id = 0;
    if (absl::SimpleAtoi(external, &id) && id < external_.size() &&
        external_[id] == external) {
      return static_cast<NodeId>(id);
    }
    return std::nullopt;
  }
  auto it = lookup_.find(external);
  if (it == lookup_.end()) return std::nullopt;
  return it->second;
}

absl::StatusOr<std::string> ReadFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return absl::NotFoundError(absl::StrCat("cannot open ", path));
  return Slurp(in);
}

absl::Status WriteFile(const std::string& path, std::string_view contents) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) {
    return absl::PermissionDeniedError(
        absl::StrCat("cannot open ", path, " for writing"));
  }
  out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
  if (!out) return absl::DataLossError(absl::StrCat("failed writing ", path));
  return absl::OkStatus();
}

absl::StatusOr<LoadedGraph> ParseEdgeList(std::istream& in, bool weighted) {
  const std::string text = Slurp(in);
  return ParseEdgeListText(text, weighted);
}

absl::StatusOr<LoadedGraph> ReadEdgeList(const std::string& path,
                                         bool weighted) {
  ASSIGN_OR_RETURN(std::string text, ReadFile(path));
  auto loaded = ParseEdgeListText(text, weighted);
  if (!loaded.ok()) {
    return absl::Status(loaded.status().code(),
                        absl::StrCat(path, ": ", loaded.status().message()));
  }
  return loaded;
}

absl::StatusOr<GroundTruth> ParseGroundTruth(std::istream& in,
                                             const IdMap& ids) {
  return ParseGroundTruthText(Slurp(in), ids);
}

absl::StatusOr<GroundTruth> ReadGroundTruth(const std::string& path,
                                            const IdMap& ids) {
  ASSIGN_OR_RETURN(std::string text, ReadFile(path));
  return ParseGroundTruthText(text, ids);
}

absl::StatusOr<std::vector<ClusterId>> ParseLabels(std::istream& in,
                                                   const IdMap& ids) {
  return ParseLabelsText(Slurp(in), ids);
}

absl::StatusOr<std::vector<ClusterId>> ReadLabels(const std::string& path,
                                                  const IdMap& ids) {
  ASSIGN_OR_RETURN(std::string text, ReadFile(path));
  return ParseLabelsText(text, ids);
}

std::string FormatClustering(std::span<const ClusterId> assignment,
                             const IdMap& ids) {
  std::vector<ClusterId> dense(assignment.size(),
                               std::numeric_limits<ClusterId>::max());
  ClusterId next = 0;
  std::string out;
  for (std::size_t v = 0; v < assignment.size(); ++v) {
    ClusterId& slot = dense[assignment[v]];
    if (slot == std::numeric_limits<ClusterId>::max()) slot = next++;
    absl::StrAppend(&out, ids.External(static_cast<NodeId>(v)), " ", slot,
                    "\n");
  }
  return out;
}

absl::Status WriteClustering(const std::string& path,
                             std::span<const ClusterId> assignment,
                             const IdMap& ids) {
  if (assignment.size() != ids.size()) {
    return absl::InvalidArgumentError("clustering does not match id map");
  }
  return WriteFile(path, FormatClustering(assignment, ids));
}

nlohmann::json MetricsToJson(const EvalReport& report) {
  auto optional = [](const std::optional<double>& x) {
    return x.has_value() ? nlohmann::json(*x) : nlohmann::json(nullptr);
  };
  nlohmann::json json;
  json["objective"] = report.objective;
  json["num_clusters"] = report.num_clusters;
  json["avg_precision"] = optional(report.avg_precision);
  json["avg_recall"] = optional(report.avg_recall);
  json["ari"] = optional(report.ari);
  json["nmi"] = optional(report.nmi);
  json["runtime_ms"] = report.runtime_ms;
  json["seed"] = report.seed;
  json["nmi_normalization"] = "arithmetic";
  return json;
}

absl::StatusOr<EvalReport> MetricsFromJson(const nlohmann::json& json) {
  if (!json.is_object()) {
    return absl::InvalidArgumentError("metrics must be a JSON object");
  }
  EvalReport report;
  try {
    auto optional = [&](const char* key) -> std::optional<double> {
      if (!json.contains(key) || json.at(key).is_null()) return std::nullopt;
      return json.at(key).get<double>();
    };
    report.objective = json.at("objective").get<double>();
    report.num_clusters = json.at("num_clusters").get<std::size_t>();
    report.avg_precision = optional("avg_precision");
    report.avg_recall = optional("avg_recall");
    report.ari = optional("ari");
    report.nmi = optional("nmi");
    report.runtime_ms = json.at("runtime_ms").get<double>();
    report.seed = json.at("seed").get<std::uint64_t>();
  } catch (const nlohmann::json::exception& e) {
    return absl::InvalidArgumentError(
        absl::StrCat("malformed metrics: ", e.what()));
  }
  return report;
}

absl::Status WriteMetrics(const std::string& path, const EvalReport& report) {
  return WriteFile(path, MetricsToJson(report).dump(2) + "\n");
}

absl::Status WriteEdgeList(const std::string& path,
                           const WeightedGraph& graph) {
  std::string out;
  for (NodeId u = 0; u < graph.NumNodes(); ++u) {
    const auto nbrs = graph.Neighbors(u);
    const auto wts = graph.NeighborWeights(u);
    for (std::size_t i = 0; i < nbrs.size(); ++i) {
      if (nbrs[i] > u) {
        absl::StrAppend(&out, u, " ", nbrs[i], " ", ShortestDouble(wts[i]),
                        "\n");
      }
    }
  }
  return WriteFile(path, out);
}

absl::Status WriteIdMap(const std::string& path, const IdMap& ids) {
  std::string out;
  for (NodeId v = 0; v < ids.size(); ++v) {
    absl::StrAppend(&out, v, " ", ids.External(v), "\n");
  }
  return WriteFile(path, out);
}

}  // namespace lambdacc
