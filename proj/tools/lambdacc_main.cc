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

// Command-line front end: cluster a graph, generate an rMAT graph, or score
// an existing clustering.

#include <cctype>
#include <cstdint>
#include <iostream>
#include <map>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "absl/status/status.h"
#include "json.hpp"
#include "lambdacc/io.h"
#include "lambdacc/louvain_par.h"
#include "lambdacc/rmat.h"
#include "lambdacc/run.h"

namespace {

using ::lambdacc::Engine;
using ::lambdacc::FrontierPolicy;
using ::lambdacc::ObjectiveKind;
using ::lambdacc::RunConfig;
using ::lambdacc::Schedule;

int Fail(const absl::Status& status) {
  std::cerr << "lambdacc: " << status.message() << "\n";
  return 1;
}

// Case-insensitive mapping from names to enum values, reporting the accepted
// names on a mismatch.
template <typename Map>
CLI::Validator Choices(const Map& names) {
  std::string listing;
  for (const auto& [name, value] : names) {
    listing += (listing.empty() ? "" : ", ") + name;
  }
  return CLI::Validator(
      [&names, listing](std::string& input) -> std::string {
        std::string lowered = input;
        for (char& ch : lowered) {
          ch = static_cast<char>(std::tolower(static_cast<unsigned char>(ch)));
        }
        const auto it = names.find(lowered);
        if (it == names.end()) {
          return "'" + input + "' is not one of " + listing;
        }
        input = std::to_string(static_cast<int>(it->second));
        return "";
      },
      "");
}

void AddObjectiveFlags(CLI::App* app, RunConfig& config) {
  static const std::map<std::string, ObjectiveKind> kObjectives = {
      {"cc", ObjectiveKind::kCc}, {"modularity", ObjectiveKind::kModularity}};
  app->add_option("--input", config.input, "Edge list")->required();
  app->add_flag("--weighted", config.weighted, "Read a third weight column");
  app->add_option("--objective", config.objective, "cc or modularity")
      ->transform(Choices(kObjectives))
      ->type_name("NAME");
  app->add_option("--resolution", config.resolution, "lambda for cc");
  app->add_option("--gamma", config.gamma, "gamma for modularity");
  app->add_option("--ground-truth", config.ground_truth,
                  "Community file for precision/recall");
  app->add_option("--labels", config.labels, "Vertex labels for ARI/NMI");
  app->add_option("--metrics", config.metrics, "Write metrics JSON here");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Parallel correlation clustering and modularity optimization"};
  app.require_subcommand(1);

  RunConfig config;
  config.options.threads = lambdacc::DefaultThreads();

  CLI::App* cluster = app.add_subcommand("cluster", "Cluster a graph");
  AddObjectiveFlags(cluster, config);
  static const std::map<std::string, Engine> kEngines = {
      {"seq", Engine::kSequential},
      {"seq-converge", Engine::kSequentialConverge},
      {"par", Engine::kParallel}};
  static const std::map<std::string, Schedule> kSchedules = {
      {"sync", Schedule::kSynchronous}, {"async", Schedule::kAsynchronous}};
  static const std::map<std::string, FrontierPolicy> kFrontiers = {
      {"all", FrontierPolicy::kAllVertices},
      {"cluster-nbrs", FrontierPolicy::kClusterNeighbors},
      {"vertex-nbrs", FrontierPolicy::kVertexNeighbors}};
  cluster->add_option("--engine", config.engine, "seq, seq-converge or par")
      ->transform(Choices(kEngines))
      ->type_name("NAME");
  cluster->add_option("--schedule", config.options.schedule, "sync or async")
      ->transform(Choices(kSchedules))
      ->type_name("NAME");
  cluster
      ->add_option("--frontier", config.options.frontier,
                   "all, cluster-nbrs or vertex-nbrs")
      ->transform(Choices(kFrontiers))
      ->type_name("NAME");
  cluster->add_flag("--refine,!--no-refine", config.options.refine,
                    "Refine while unwinding levels (default on)");
  cluster->add_option("--num-iter", config.options.num_iter,
                      "Best-move iterations per level");
  cluster->add_option("--seed", config.options.seed, "Random seed");
  cluster->add_option("--threads", config.options.threads, "Worker threads");
  cluster->add_option("--out", config.out, "Write the clustering here");

  lambdacc::RmatParams rmat_params;
  std::optional<std::uint64_t> rmat_edges;
  std::optional<double> rmat_edge_factor;
  std::string rmat_out;
  CLI::App* rmat = app.add_subcommand("rmat", "Generate an rMAT graph");
  rmat->add_option("--scale", rmat_params.scale, "log2 of the vertex count")
      ->required();
  auto* edges_opt =
      rmat->add_option("--edges", rmat_edges, "Number of sampled pairs");
  auto* factor_opt = rmat->add_option("--edge-factor", rmat_edge_factor,
                                      "Sampled pairs per vertex");
  edges_opt->excludes(factor_opt);
  rmat->add_option("--a", rmat_params.a, "Top-left quadrant probability");
  rmat->add_option("--b", rmat_params.b, "Top-right quadrant probability");
  rmat->add_option("--c", rmat_params.c, "Bottom-left quadrant probability");
  rmat->add_option("--d", rmat_params.d, "Bottom-right quadrant probability");
  rmat->add_option("--seed", rmat_params.seed, "Random seed");
  rmat->add_option("--out", rmat_out, "Edge list output")->required();

  RunConfig eval_config;
  std::string clustering_path;
  CLI::App* eval = app.add_subcommand("eval", "Score an existing clustering");
  AddObjectiveFlags(eval, eval_config);
  eval->add_option("--clustering", clustering_path,
                   "\"vertex cluster\" lines")
      ->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "lambdacc: " << e.what() << "\n";
    return 2;
  }

  if (cluster->parsed()) {
    auto report = lambdacc::Run(config);
    if (!report.ok()) return Fail(report.status());
    std::cout << lambdacc::MetricsToJson(*report).dump() << "\n";
    return 0;
  }
  if (rmat->parsed()) {
    if (rmat_params.scale < 0 || rmat_params.scale > 30) {
      return Fail(absl::InvalidArgumentError("scale must be in [0, 30]"));
    }
    const std::uint64_t n = std::uint64_t{1} << rmat_params.scale;
    if (rmat_edges.has_value()) {
      rmat_params.num_samples = *rmat_edges;
    } else if (rmat_edge_factor.has_value()) {
      if (!(*rmat_edge_factor >= 0)) {
        return Fail(absl::InvalidArgumentError("edge factor must be >= 0"));
      }
      rmat_params.num_samples =
          static_cast<std::uint64_t>(*rmat_edge_factor * static_cast<double>(n));
    } else {
      return Fail(absl::InvalidArgumentError(
          "one of --edges or --edge-factor is required"));
    }
    lambdacc::RmatStats stats;
    auto graph = lambdacc::GenerateRmat(rmat_params, &stats);
    if (!graph.ok()) return Fail(graph.status());
    if (auto status = lambdacc::WriteEdgeList(rmat_out, *graph); !status.ok()) {
      return Fail(status);
    }
    nlohmann::json summary;
    summary["num_nodes"] = graph->NumNodes();
    summary["num_edges"] = graph->NumEdges();
    summary["samples"] = stats.samples;
    summary["self_loops"] = stats.self_loops;
    summary["duplicates"] = stats.duplicates;
    std::cout << summary.dump() << "\n";
    return 0;
  }
  auto report = lambdacc::Evaluate(eval_config, clustering_path);
  if (!report.ok()) return Fail(report.status());
  std::cout << lambdacc::MetricsToJson(*report).dump() << "\n";
  return 0;
}
