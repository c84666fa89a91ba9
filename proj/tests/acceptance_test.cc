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

// Acceptance checks. Usage: acceptance_test [criterion]. Prints one
// "AC<n> PASS|FAIL: ..." line per criterion and exits nonzero if any fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <optional>
#include <random>
#include <string>
#include <thread>
#include <vector>

#include "absl/container/flat_hash_map.h"
#include "absl/strings/str_cat.h"
#include "absl/strings/str_format.h"
#include "lambdacc/clustering.h"
#include "lambdacc/eval.h"
#include "lambdacc/graph.h"
#include "lambdacc/io.h"
#include "lambdacc/louvain_par.h"
#include "lambdacc/louvain_seq.h"
#include "lambdacc/objective.h"
#include "lambdacc/parallel.h"
#include "lambdacc/rmat.h"
#include "lambdacc/run.h"
#include "test_util.h"

namespace lambdacc {
namespace {

using testing::EnumerateBest;
using testing::PairSumObjective;
using testing::PlantedPartition;
using testing::RandomAssignment;
using testing::RandomInstance;
using testing::RandomWeights;

struct Outcome {
  bool pass = false;
  std::string detail;
};

using Clock = std::chrono::steady_clock;

double SecondsSince(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

template <typename F>
double TimeSeconds(F&& f) {
  const auto start = Clock::now();
  f();
  return SecondsSince(start);
}

int AvailableCores() {
  return std::max(1u, std::thread::hardware_concurrency());
}

absl::flat_hash_map<ClusterId, double> EdgeSums(const WeightedGraph& graph,
                                                const Clustering& clustering,
                                                NodeId v) {
  absl::flat_hash_map<ClusterId, double> sums;
  const auto nbrs = graph.Neighbors(v);
  const auto wts = graph.NeighborWeights(v);
  for (std::size_t i = 0; i < nbrs.size(); ++i) {
    sums[clustering.ClusterOf(nbrs[i])] += wts[i];
  }
  return sums;
}

WeightedGraph Rmat(int scale, std::uint64_t samples, std::uint64_t seed) {
  RmatParams params;
  params.scale = scale;
  params.num_samples = samples;
  params.seed = seed;
  return GenerateRmat(params).value();
}

double Objective(const WeightedGraph& graph, const ClusteringParams& params,
                 const Clustering& clustering) {
  return CcObjective(graph, params, clustering).value();
}

ParOptions DefaultParOptions(std::uint64_t seed) {
  ParOptions options;
  options.seed = seed;
  options.threads = DefaultThreads();
  return options;
}

double SeqConvergeObjective(const WeightedGraph& graph,
                            const ClusteringParams& params,
                            std::uint64_t seed) {
  SeqOptions options;
  options.num_iter = std::nullopt;
  options.seed = seed;
  return Objective(graph, params, SequentialCc(graph, params, options).value());
}

// Best of 5 converged sequential runs on 200 micro instances versus
// exhaustive search.
Outcome Ac1() {
  std::mt19937_64 rng(101);
  const double lambdas[] = {0.05, 0.3, 0.6};
  int near_optimal = 0;
  int exceeded = 0;
  int disagreements = 0;
  const auto start = Clock::now();
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = 2 + rng() % 7;
    auto inst = RandomInstance(n, 0.6, -1.0, 2.0, rng);
    ClusteringParams params{lambdas[trial % 3],
                            trial % 2 == 0 ? UnitVertexWeights(inst.graph)
                                           : RandomWeights(n, rng)};
    const double best = BruteForceBest(inst.graph, params).value().second;
    if (std::abs(best - EnumerateBest(inst.adjacency, params.resolution,
                                      params.node_weights)) > 1e-9) {
      ++disagreements;
    }
    double found = -std::numeric_limits<double>::infinity();
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
      found = std::max(found, SeqConvergeObjective(inst.graph, params, seed));
    }
    if (found > best + 1e-9) ++exceeded;
    if (found >= 0.95 * best - 1e-12) ++near_optimal;
  }
  const double seconds = SecondsSince(start);
  return {near_optimal >= 180 && exceeded == 0 && disagreements == 0 &&
              seconds < 10.0,
          absl::StrFormat("%d/200 within 95%% of optimum, %d above it, "
                          "%d oracle disagreements, %.2f s",
                          near_optimal, exceeded, disagreements, seconds)};
}

// MoveDelta against the change in the pair-sum objective.
Outcome Ac2() {
  std::mt19937_64 rng(202);
  double worst = 0.0;
  int checked = 0;
  while (checked < 10000) {
    const std::size_t n = 1 + rng() % 12;
    auto inst = RandomInstance(n, 0.5, -2.0, 2.0, rng);
    ClusteringParams params{std::uniform_real_distribution<>(0.0, 0.9)(rng),
                            RandomWeights(n, rng)};
    auto assignment = RandomAssignment(n, 1 + rng() % n, rng);
    auto clustering =
        Clustering::FromAssignment(assignment, params.node_weights).value();
    const double before = PairSumObjective(inst.adjacency, params.resolution,
                                           params.node_weights, assignment);
    for (int move = 0; move < 10; ++move) {
      const NodeId v = rng() % n;
      const ClusterId target = rng() % n;
      const double delta =
          MoveDelta(inst.graph, params, clustering, v, target,
                    EdgeSums(inst.graph, clustering, v))
              .value();
      auto moved = assignment;
      moved[v] = target;
      const double after = PairSumObjective(inst.adjacency, params.resolution,
                                            params.node_weights, moved);
      worst = std::max(worst, std::abs(delta - (after - before)));
      ++checked;
    }
  }
  return {worst <= 1e-9,
          absl::StrFormat("%d triples, max error %.3g", checked, worst)};
}

// ModularityValue against the direct formula, and the triangle value.
Outcome Ac3() {
  std::mt19937_64 rng(303);
  double worst = 0.0;
  int checked = 0;
  while (checked < 100) {
    const std::size_t n = 2 + rng() % 20;
    auto inst = RandomInstance(n, 0.4, 0.1, 2.0, rng);
    const double gamma = std::uniform_real_distribution<>(0.2, 2.0)(rng);
    auto params = ModularityParams(inst.graph, gamma);
    if (!params.ok()) continue;
    auto assignment = RandomAssignment(n, 1 + rng() % n, rng);
    auto clustering =
        Clustering::FromAssignment(assignment, params->node_weights).value();
    const double q = ModularityValue(inst.graph, gamma, clustering).value();
    worst = std::max(
        worst,
        std::abs(q - testing::DirectModularity(inst.adjacency, gamma,
                                               assignment)));
    ++checked;
  }
  auto triangle =
      BuildGraph(std::vector<Edge>{{0, 1}, {1, 2}, {0, 2}}).value();
  auto one = Clustering::FromAssignment({0, 0, 0}, std::vector<double>{2.0, 2.0, 2.0}).value();
  const double tri = ModularityValue(triangle, 1.0, one).value();
  return {worst <= 1e-9 && std::abs(tri - 1.0 / 3.0) <= 1e-12,
          absl::StrFormat("%d instances, max error %.3g; triangle Q = %.17g",
                          checked, worst, tri)};
}

// Three vertices a, b, c with w(a,b) = w(a,c) = 1 and w(b,c) = -3.
Outcome Ac4() {
  auto graph =
      BuildGraph(std::vector<Edge>{{0, 1, 1.0}, {0, 2, 1.0}, {1, 2, -3.0}})
          .value();
  ClusteringParams params = UnitParams(graph, 0.0);
  ParOptions sync;
  sync.schedule = Schedule::kSynchronous;
  sync.frontier = FrontierPolicy::kAllVertices;
  sync.num_iter = 1;
  sync.threads = 1;
  auto sync_result = ParBestMoves(graph, params,
                                  Clustering::Singletons(params.node_weights),
                                  sync)
                         .value();
  const double sync_objective = Objective(graph, params, sync_result.first);
  double worst_async = std::numeric_limits<double>::infinity();
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    ParOptions async;
    async.schedule = Schedule::kAsynchronous;
    async.threads = 1;
    async.seed = seed;
    auto result = ParBestMoves(graph, params,
                               Clustering::Singletons(params.node_weights),
                               async)
                      .value();
    worst_async =
        std::min(worst_async, Objective(graph, params, result.first));
  }
  return {std::abs(sync_objective + 1.0) <= 1e-12 &&
              worst_async > sync_objective,
          absl::StrFormat("synchronous %g (%zu cluster), asynchronous worst "
                          "over 10 seeds %g",
                          sync_objective, sync_result.first.NumClusters(),
                          worst_async)};
}

// Compression conserves the objective; parallel compress/flatten match the
// sequential versions exactly.
Outcome Ac5() {
  std::mt19937_64 rng(505);
  double worst = 0.0;
  int mismatches = 0;
  ScopedParallelism parallelism(4);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = 1 + rng() % 32;
    auto inst = RandomInstance(n, 0.3, -2.0, 3.0, rng);
    ClusteringParams params{std::uniform_real_distribution<>(0.0, 0.8)(rng),
                            RandomWeights(n, rng)};
    auto fine = Clustering::FromAssignment(
                    RandomAssignment(n, 1 + rng() % n, rng),
                    params.node_weights)
                    .value();
    auto level = Compress(inst.graph, params, fine).value();
    auto par_level = ParCompress(inst.graph, params, fine).value();
    const std::size_t m = level.graph.NumNodes();
    ClusteringParams coarse_params{params.resolution, level.node_weights};
    auto coarse = Clustering::FromAssignment(
                      RandomAssignment(m, 1 + rng() % m, rng),
                      level.node_weights)
                      .value();
    auto flat = Flatten(fine, coarse, level.mapping).value();
    auto par_flat = ParFlatten(fine, coarse, level.mapping).value();
    const double original = PairSumObjective(
        inst.adjacency, params.resolution, params.node_weights,
        flat.Assignment());
    worst = std::max(
        worst, std::abs(Objective(level.graph, coarse_params, coarse) +
                        level.internal_offset - original));
    const bool same_level =
        par_level.mapping == level.mapping &&
        par_level.node_weights == level.node_weights &&
        par_level.internal_offset == level.internal_offset &&
        std::ranges::equal(par_level.graph.Offsets(), level.graph.Offsets());
    bool same_edges = same_level;
    for (NodeId v = 0; same_edges && v < m; ++v) {
      same_edges = std::ranges::equal(par_level.graph.Neighbors(v),
                                      level.graph.Neighbors(v)) &&
                   std::ranges::equal(par_level.graph.NeighborWeights(v),
                                      level.graph.NeighborWeights(v));
    }
    const bool same_flat =
        std::ranges::equal(par_flat.Assignment(), flat.Assignment()) &&
        std::ranges::equal(par_flat.Masses(), flat.Masses());
    if (!same_edges || !same_flat) ++mismatches;
  }
  return {worst <= 1e-9 && mismatches == 0,
          absl::StrFormat("100 instances, max conservation error %.3g, %d "
                          "parallel/sequential mismatches",
                          worst, mismatches)};
}

// Every accepted move raises the objective by its delta; flattening never
// lowers it.
Outcome Ac6() {
  std::mt19937_64 rng(606);
  long moves = 0;
  long violations = 0;
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t n = 2 + rng() % (trial < 200 ? 7 : 80);
    auto inst = RandomInstance(n, trial < 200 ? 0.6 : 0.1, -1.0, 2.0, rng);
    ClusteringParams params{std::uniform_real_distribution<>(0.01, 0.6)(rng),
                            trial % 2 == 0 ? UnitVertexWeights(inst.graph)
                                           : RandomWeights(n, rng)};
    double last = 0.0;
    SeqTrace trace;
    trace.on_move = [&](const WeightedGraph& graph,
                        const ClusteringParams& level_params,
                        const Clustering& clustering, double offset,
                        double delta) {
      const double now = Objective(graph, level_params, clustering) + offset;
      ++moves;
      if (!(delta > 0) || now < last - 1e-9) ++violations;
      last = now;
    };
    trace.on_level = [&](int level, const Clustering& flattened) {
      if (level != 0) return;
      if (Objective(inst.graph, params, flattened) < last - 1e-7) ++violations;
    };
    SeqOptions options;
    options.seed = trial;
    options.trace = &trace;
    if (trial % 2 == 1) options.num_iter = std::nullopt;
    SequentialCc(inst.graph, params, options).value();
  }
  return {violations == 0 && moves > 0,
          absl::StrFormat("%ld accepted moves, %ld decreases", moves,
                          violations)};
}

// Parallel defaults against converged sequential runs, per seed.
Outcome Ac7() {
  double lo = std::numeric_limits<double>::infinity();
  double hi = -lo;
  int runs = 0;
  auto compare = [&](const WeightedGraph& graph,
                     const ClusteringParams& params) {
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
      const double par = Objective(
          graph, params,
          ParallelCc(graph, params, DefaultParOptions(seed)).value());
      const double seq = SeqConvergeObjective(graph, params, seed);
      const double ratio = par / seq;
      lo = std::min(lo, ratio);
      hi = std::max(hi, ratio);
      ++runs;
    }
  };
  for (std::uint64_t g = 0; g < 10; ++g) {
    auto planted = PlantedPartition(10, 50, 0.3, 0.02, 700 + g);
    compare(planted.graph, UnitParams(planted.graph, 0.05));
  }
  auto rmat = Rmat(14, 16ull << 14, 7);
  compare(rmat, UnitParams(rmat, 0.01));
  return {lo >= 0.95 && hi <= 1.10,
          absl::StrFormat("%d runs, parallel/sequential ratio in [%.4f, %.4f]",
                          runs, lo, hi)};
}

// Planted communities are recovered.
Outcome Ac8() {
  auto planted = PlantedPartition(10, 50, 0.5, 0.01, 808);
  ClusteringParams params = UnitParams(planted.graph, 0.05);
  auto clustering =
      ParallelCc(planted.graph, params, DefaultParOptions(0)).value();
  GroundTruth truth;
  truth.communities.resize(10);
  for (NodeId v = 0; v < planted.labels.size(); ++v) {
    truth.communities[planted.labels[v]].push_back(v);
  }
  auto pr = AvgPrecisionRecall(clustering.Assignment(), truth).value();
  return {pr.precision >= 0.95 && pr.recall >= 0.95,
          absl::StrFormat("avg precision %.4f, avg recall %.4f, %zu clusters",
                          pr.precision, pr.recall, clustering.NumClusters())};
}

double ParallelSeconds(const WeightedGraph& graph,
                       const ClusteringParams& params, int threads) {
  ParOptions options = DefaultParOptions(1);
  options.threads = threads;
  return TimeSeconds([&] { ParallelCc(graph, params, options).value(); });
}

// Self-relative speedup on a scale-20 rMAT graph.
Outcome Ac9() {
  const auto start = Clock::now();
  const int cores = AvailableCores();
  const int threads = std::min(cores, 8);
  auto graph = Rmat(20, 50ull << 20, 9);
  ClusteringParams params = UnitParams(graph, 0.01);
  const double t1 = ParallelSeconds(graph, params, 1);
  const double tn = ParallelSeconds(graph, params, threads);
  const double total = SecondsSince(start);
  const double speedup = t1 / tn;
  return {speedup >= 1.5 && total < 300.0,
          absl::StrFormat("%d core(s) available, T=%d; %zu edges; T=1 %.2f s, "
                          "T=%d %.2f s, speedup %.2fx, total %.1f s",
                          cores, threads, graph.NumEdges(), t1, threads, tn,
                          speedup, total)};
}

// Runtime grows near-linearly in the number of edges.
Outcome Ac10() {
  constexpr int kScale = 17;
  auto small = Rmat(kScale, 200000, 10);
  auto large = Rmat(kScale, 2000000, 10);
  auto median_seconds = [](const WeightedGraph& graph) {
    ClusteringParams params = UnitParams(graph, 0.01);
    std::vector<double> times;
    for (int rep = 0; rep < 3; ++rep) {
      times.push_back(ParallelSeconds(graph, params, DefaultThreads()));
    }
    std::sort(times.begin(), times.end());
    return times[1];
  };
  const double ts = median_seconds(small);
  const double tl = median_seconds(large);
  const double ratio = tl / ts;
  return {ratio <= 20.0,
          absl::StrFormat("n=%zu; %zu edges %.3f s, %zu edges %.3f s, "
                          "ratio %.2f",
                          small.NumNodes(), small.NumEdges(), ts,
                          large.NumEdges(), tl, ratio)};
}

// Cluster masses stay consistent under 8-thread asynchronous moves.
Outcome Ac11() {
  auto graph = Rmat(16, 16ull << 16, 11);
  ClusteringParams params = UnitParams(graph, 0.01);
  long boundaries = 0;
  long violations = 0;
  double worst = 0.0;
  for (std::uint64_t rep = 0; rep < 20; ++rep) {
    ParOptions options;
    options.schedule = Schedule::kAsynchronous;
    options.threads = 8;
    options.seed = rep;
    options.on_iteration = [&](const IterationTrace& trace) {
      const double error = std::abs(trace.mass_sum - trace.total_node_weight) /
                           std::max(1.0, std::abs(trace.total_node_weight));
      worst = std::max(worst, error);
      ++boundaries;
      if (error > 1e-6) ++violations;
    };
    ParallelCc(graph, params, options).value();
  }
  return {violations == 0 && boundaries > 0,
          absl::StrFormat("%ld iteration boundaries over 20 runs, max "
                          "relative error %.3g",
                          boundaries, worst)};
}

// Refinement does not lower the objective in most seeded runs.
Outcome Ac12() {
  int wins = 0;
  double total_gain = 0.0;
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    auto planted = PlantedPartition(10, 30, 0.95, 0.05, 1200 + seed);
    ClusteringParams params = UnitParams(planted.graph, 0.85);
    ParOptions options = DefaultParOptions(seed);
    options.refine = true;
    const double refined = Objective(
        planted.graph, params,
        ParallelCc(planted.graph, params, options).value());
    options.refine = false;
    const double plain = Objective(
        planted.graph, params,
        ParallelCc(planted.graph, params, options).value());
    if (refined >= plain) ++wins;
    total_gain += refined - plain;
  }
  return {wins >= 8, absl::StrFormat("refined >= unrefined in %d/10 runs, "
                                     "total objective gain %.4g",
                                     wins, total_gain)};
}

// Karate club end to end.
Outcome Ac13() {
  RunConfig config;
  config.input = std::string(LAMBDACC_TEST_DATA_DIR) + "/karate.txt";
  config.resolution = 0.01;
  EvalReport report;
  const double seconds = TimeSeconds([&] { report = Run(config).value(); });
  return {seconds < 0.05 && report.objective > 0.0,
          absl::StrFormat("objective %.6g, %zu clusters, %.2f ms",
                          report.objective, report.num_clusters,
                          seconds * 1e3)};
}

const std::function<Outcome()> kCriteria[] = {
    Ac1, Ac2, Ac3, Ac4, Ac5, Ac6, Ac7, Ac8, Ac9, Ac10, Ac11, Ac12, Ac13};

}  // namespace
}  // namespace lambdacc

int main(int argc, char** argv) {
  constexpr int kNumCriteria = 13;
  std::vector<int> selected;
  if (argc > 1) {
    const int which = std::atoi(argv[1]);
    if (which < 1 || which > kNumCriteria) {
      std::fprintf(stderr, "usage: %s [1-%d]\n", argv[0], kNumCriteria);
      return 2;
    }
    selected.push_back(which);
  } else {
    for (int i = 1; i <= kNumCriteria; ++i) selected.push_back(i);
  }
  bool all_pass = true;
  for (int which : selected) {
    const lambdacc::Outcome outcome = lambdacc::kCriteria[which - 1]();
    std::printf("AC%d %s: %s\n", which, outcome.pass ? "PASS" : "FAIL",
                outcome.detail.c_str());
    std::fflush(stdout);
    all_pass = all_pass && outcome.pass;
  }
  return all_pass ? 0 : 1;
}
