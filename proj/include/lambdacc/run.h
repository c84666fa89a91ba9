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

#ifndef LAMBDACC_RUN_H_
#define LAMBDACC_RUN_H_

#include <cstdint>
#include <optional>
#include <string>

#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "lambdacc/clustering.h"
#include "lambdacc/eval.h"
#include "lambdacc/graph.h"
#include "lambdacc/io.h"
#include "lambdacc/louvain_par.h"

namespace lambdacc {

enum class Engine { kSequential, kSequentialConverge, kParallel };
enum class ObjectiveKind { kCc, kModularity };

struct RunConfig {
  std::string input;
  bool weighted = false;
  ObjectiveKind objective = ObjectiveKind::kCc;
  double resolution = 0.01;  // lambda, for kCc.
  double gamma = 1.0;        // For kModularity.
  Engine engine = Engine::kParallel;
  // Schedule, frontier, refinement, iterations, seed and threads. The seed
  // and iteration count also drive the sequential engines.
  ParOptions options;
  std::optional<std::string> ground_truth;
  std::optional<std::string> labels;
  std::optional<std::string> out;
  std::optional<std::string> metrics;
};

// LAMBDACC_THREADS if set to a positive integer, else the hardware
// concurrency.
int DefaultThreads();

// Checks everything that does not need the graph.
absl::Status ValidateRunConfig(const RunConfig& config);

// Objective weights for `config` on `graph`. For modularity this also checks
// that gamma / (2 * total weight) lies in (0, 1).
absl::StatusOr<ClusteringParams> ParamsFor(const WeightedGraph& graph,
                                           const RunConfig& config);

struct ClusterResult {
  Clustering clustering;
  double objective = 0.0;  // CC objective, or modularity Q.
  double runtime_ms = 0.0;
};

// Runs the configured engine on an in-memory graph. Only the engine call is
// timed.
absl::StatusOr<ClusterResult> ClusterGraph(const WeightedGraph& graph,
                                           const RunConfig& config);

// Loads the input, clusters it, evaluates the requested metrics and writes
// the requested outputs.
absl::StatusOr<EvalReport> Run(const RunConfig& config);

// Scores the clustering stored in `clustering_path` ("vertex cluster" lines)
// for config.input; the engine fields of `config` are ignored.
absl::StatusOr<EvalReport> Evaluate(const RunConfig& config,
                                    const std::string& clustering_path);

}  // namespace lambdacc

#endif  // LAMBDACC_RUN_H_
