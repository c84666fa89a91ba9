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

#include "lambdacc/run.h"

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <string>
#include <thread>

#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "absl/strings/numbers.h"
#include "absl/strings/str_cat.h"
#include "lambdacc/louvain_seq.h"
#include "lambdacc/objective.h"
#include "lambdacc/status_macros.h"

namespace lambdacc {
namespace {

bool InOpenUnitInterval(double x) { return x > 0.0 && x < 1.0; }

absl::StatusOr<double> ObjectiveValue(const WeightedGraph& graph,
                                      const RunConfig& config,
                                      const ClusteringParams& params,
                                      const Clustering& clustering) {
  if (config.objective == ObjectiveKind::kModularity) {
    return ModularityValue(graph, config.gamma, clustering);
  }
  return CcObjective(graph, params, clustering);
}

// Fills the ground-truth and label metrics requested by `config`.
absl::Status AddQualityMetrics(const RunConfig& config, const IdMap& ids,
                               std::span<const ClusterId> assignment,
                               EvalReport& report) {
  if (config.ground_truth.has_value()) {
    ASSIGN_OR_RETURN(GroundTruth truth,
                     ReadGroundTruth(*config.ground_truth, ids));
    ASSIGN_OR_RETURN(PrecisionRecall pr, AvgPrecisionRecall(assignment, truth));
    report.avg_precision = pr.precision;
    report.avg_recall = pr.recall;
  }
  if (config.labels.has_value()) {
    ASSIGN_OR_RETURN(std::vector<ClusterId> labels,
                     ReadLabels(*config.labels, ids));
    ASSIGN_OR_RETURN(report.ari, AdjustedRandIndex(assignment, labels));
    ASSIGN_OR_RETURN(report.nmi,
                     NormalizedMutualInformation(assignment, labels));
  }
  return absl::OkStatus();
}

}  // namespace

int DefaultThreads() {
  if (const char* env = std::getenv("LAMBDACC_THREADS"); env != nullptr) {
    int threads = 0;
    if (absl::SimpleAtoi(env, &threads) && threads > 0) return threads;
  }
  return static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
}

absl::Status ValidateRunConfig(const RunConfig& config) {
  if (config.objective == ObjectiveKind::kCc &&
      !InOpenUnitInterval(config.resolution)) {
    return absl::InvalidArgumentError(absl::StrCat(
        "resolution must be in (0, 1), got ", config.resolution));
  }
  if (config.objective == ObjectiveKind::kModularity &&
      !(config.gamma > 0.0 && std::isfinite(config.gamma))) {
    return absl::InvalidArgumentError(
        absl::StrCat("gamma must be positive, got ", config.gamma));
  }
  return ValidateOptions(config.options);
}

absl::StatusOr<ClusteringParams> ParamsFor(const WeightedGraph& graph,
                                           const RunConfig& config) {
  if (config.objective == ObjectiveKind::kModularity) {
    return ModularityParams(graph, config.gamma);
  }
  if (!InOpenUnitInterval(config.resolution)) {
    return absl::InvalidArgumentError(absl::StrCat(
        "resolution must be in (0, 1), got ", config.resolution));
  }
  return UnitParams(graph, config.resolution);
}

absl::StatusOr<ClusterResult> ClusterGraph(const WeightedGraph& graph,
                                           const RunConfig& config) {
  RETURN_IF_ERROR(ValidateRunConfig(config));
  ASSIGN_OR_RETURN(ClusteringParams params, ParamsFor(graph, config));

  ClusterResult result;
  const auto start = std::chrono::steady_clock::now();
  if (config.engine == Engine::kParallel) {
    ASSIGN_OR_RETURN(result.clustering,
                     ParallelCc(graph, params, config.options));
  } else {
    SeqOptions options;
    options.seed = config.options.seed;
    options.num_iter = config.engine == Engine::kSequentialConverge
                           ? std::nullopt
                           : std::optional<int>(config.options.num_iter);
    ASSIGN_OR_RETURN(result.clustering, SequentialCc(graph, params, options));
  }
  const auto stop = std::chrono::steady_clock::now();
  result.runtime_ms =
      std::chrono::duration<double, std::milli>(stop - start).count();
  ASSIGN_OR_RETURN(result.objective,
                   ObjectiveValue(graph, config, params, result.clustering));
  return result;
}

absl::StatusOr<EvalReport> Run(const RunConfig& config) {
  RETURN_IF_ERROR(ValidateRunConfig(config));
  ASSIGN_OR_RETURN(LoadedGraph loaded,
                   ReadEdgeList(config.input, config.weighted));
  ASSIGN_OR_RETURN(ClusterResult result, ClusterGraph(loaded.graph, config));

  EvalReport report;
  report.objective = result.objective;
  report.num_clusters = result.clustering.NumClusters();
  report.runtime_ms = result.runtime_ms;
  report.seed = config.options.seed;
  RETURN_IF_ERROR(AddQualityMetrics(config, loaded.ids,
                                    result.clustering.Assignment(), report));
  if (config.out.has_value()) {
    RETURN_IF_ERROR(WriteClustering(*config.out,
                                    result.clustering.Assignment(),
                                    loaded.ids));
  }
  if (config.metrics.has_value()) {
    RETURN_IF_ERROR(WriteMetrics(*config.metrics, report));
  }
  return report;
}

absl::StatusOr<EvalReport> Evaluate(const RunConfig& config,
                                    const std::string& clustering_path) {
  ASSIGN_OR_RETURN(LoadedGraph loaded,
                   ReadEdgeList(config.input, config.weighted));
  ASSIGN_OR_RETURN(ClusteringParams params, ParamsFor(loaded.graph, config));
  ASSIGN_OR_RETURN(std::vector<ClusterId> assignment,
                   ReadLabels(clustering_path, loaded.ids));
  ASSIGN_OR_RETURN(Clustering clustering,
                   Clustering::FromAssignment(assignment, params.node_weights));

  EvalReport report;
  ASSIGN_OR_RETURN(report.objective,
                   ObjectiveValue(loaded.graph, config, params, clustering));
  report.num_clusters = clustering.NumClusters();
  report.seed = config.options.seed;
  RETURN_IF_ERROR(
      AddQualityMetrics(config, loaded.ids, clustering.Assignment(), report));
  if (config.metrics.has_value()) {
    RETURN_IF_ERROR(WriteMetrics(*config.metrics, report));
  }
  return report;
}

}  // namespace lambdacc
