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

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <unistd.h>

#include "absl/status/status.h"
#include "gmock/gmock.h"
#include "gtest/gtest.h"
#include "lambdacc/clustering.h"
#include "lambdacc/eval.h"
#include "lambdacc/io.h"
#include "test_util.h"
#include "lambdacc/rmat.h"

namespace lambdacc {
namespace {

using ::testing::ElementsAre;
using ::testing::ElementsAreArray;
using ::testing::HasSubstr;

std::string TempPath(const std::string& name) {
  return (std::filesystem::temp_directory_path() /
          ("lambdacc_io_test_" + std::to_string(::getpid()) + "_" + name))
      .string();
}

absl::StatusOr<LoadedGraph> Parse(const std::string& text, bool weighted) {
  std::istringstream in(text);
  return ParseEdgeList(in, weighted);
}

TEST(ReadEdgeListTest, UnweightedPath) {
  auto loaded = Parse("0 1\n1 2\n", false);
  ASSERT_TRUE(loaded.ok());
  EXPECT_EQ(loaded->graph.NumNodes(), 3u);
  EXPECT_EQ(loaded->graph.NumEdges(), 2u);
  EXPECT_EQ(loaded->graph.EdgeWeight(0, 1), 1.0);
  EXPECT_EQ(loaded->graph.EdgeWeight(1, 2), 1.0);
  EXPECT_TRUE(loaded->ids.is_identity());
}

TEST(ReadEdgeListTest, CommentsAndWeights) {
  auto loaded = Parse("# comment\n0 1 2.5\n", true);
  ASSERT_TRUE(loaded.ok());
  EXPECT_EQ(loaded->graph.NumEdges(), 1u);
  EXPECT_EQ(loaded->graph.EdgeWeight(0, 1), 2.5);

  auto ignored = Parse("# comment\n0 1 2.5\n", false);
  ASSERT_TRUE(ignored.ok());
  EXPECT_EQ(ignored->graph.EdgeWeight(0, 1), 1.0);
}

TEST(ReadEdgeListTest, StringIdsRemappedByFirstAppearance) {
  auto loaded = Parse("a b\nb c\n", false);
  ASSERT_TRUE(loaded.ok());
  EXPECT_EQ(loaded->graph.NumNodes(), 3u);
  EXPECT_FALSE(loaded->ids.is_identity());
  EXPECT_EQ(loaded->ids.Find("a"), 0u);
  EXPECT_EQ(loaded->ids.Find("b"), 1u);
  EXPECT_EQ(loaded->ids.External(2), "c");
  EXPECT_EQ(loaded->ids.Find("z"), std::nullopt);
}

TEST(ReadEdgeListTest, SparseIntegerIdsRemappedInOrder) {
  auto loaded = Parse("10 3\n3 7\n", false);
  ASSERT_TRUE(loaded.ok());
  EXPECT_EQ(loaded->graph.NumNodes(), 3u);
  EXPECT_EQ(loaded->ids.Find("3"), 0u);
  EXPECT_EQ(loaded->ids.Find("7"), 1u);
  EXPECT_EQ(loaded->ids.Find("10"), 2u);
  EXPECT_EQ(loaded->graph.EdgeWeight(0, 2), 1.0);
}

TEST(ReadEdgeListTest, ErrorsCarryLineNumbers) {
  auto bad = Parse("0 1\n# ok\n2\n", false);
  EXPECT_EQ(bad.status().code(), absl::StatusCode::kInvalidArgument);
  EXPECT_THAT(std::string(bad.status().message()), HasSubstr("line 3"));

  auto weight = Parse("0 1 x\n", true);
  EXPECT_THAT(std::string(weight.status().message()), HasSubstr("line 1"));
  EXPECT_THAT(std::string(weight.status().message()), HasSubstr("weight"));

  EXPECT_FALSE(Parse("0 1 nan\n", true).ok());
  EXPECT_FALSE(Parse("0 1 2 3\n", true).ok());
  EXPECT_FALSE(Parse("# nothing\n", false).ok());
  EXPECT_FALSE(ReadEdgeList("/nonexistent/graph.txt", false).ok());
}

TEST(ReadGroundTruthTest, Communities) {
  auto loaded = Parse("1 2\n3 4\n5 1\n", false);
  ASSERT_TRUE(loaded.ok());
  std::istringstream in("1 2 3\n\n4 5\n");
  auto truth = ParseGroundTruth(in, loaded->ids);
  ASSERT_TRUE(truth.ok());
  ASSERT_EQ(truth->communities.size(), 2u);
  EXPECT_THAT(truth->communities[0], ElementsAre(0, 1, 2));
  EXPECT_THAT(truth->communities[1], ElementsAre(3, 4));

  std::istringstream unknown("1 9\n");
  auto bad = ParseGroundTruth(unknown, loaded->ids);
  EXPECT_FALSE(bad.ok());
  EXPECT_THAT(std::string(bad.status().message()), HasSubstr("9"));
}

TEST(ReadLabelsTest, LabelsNumberedByFirstAppearance) {
  IdMap ids = IdMap::FromExternal({"x", "y", "z"});
  std::istringstream in("z red\nx blue\ny red\n");
  auto labels = ParseLabels(in, ids);
  ASSERT_TRUE(labels.ok());
  EXPECT_THAT(*labels, ElementsAre(1, 0, 0));

  std::istringstream missing("x a\ny a\n");
  EXPECT_FALSE(ParseLabels(missing, ids).ok());
  std::istringstream twice("x a\ny a\nz a\nx b\n");
  EXPECT_FALSE(ParseLabels(twice, ids).ok());
}

TEST(WriteClusteringTest, Format) {
  IdMap ids = IdMap::Identity(2);
  std::vector<ClusterId> assignment = {1, 1};
  EXPECT_EQ(FormatClustering(assignment, ids), "0 0\n1 0\n");

  IdMap named = IdMap::FromExternal({"a", "b", "c"});
  std::vector<ClusterId> three = {2, 0, 2};
  EXPECT_EQ(FormatClustering(three, named), "a 0\nb 1\nc 0\n");
}

TEST(WriteClusteringPropertyTest, RoundTrip) {
  std::mt19937_64 rng(3);
  const std::string path = TempPath("clustering.txt");
  for (int trial = 0; trial < 30; ++trial) {
    const std::size_t n = 1 + rng() % 50;
    std::vector<std::string> external(n);
    for (std::size_t v = 0; v < n; ++v) external[v] = "v" + std::to_string(v * 7);
    IdMap ids = IdMap::FromExternal(external);
    std::vector<ClusterId> assignment(n);
    for (auto& c : assignment) c = static_cast<ClusterId>(rng() % n);
    ASSERT_TRUE(WriteClustering(path, assignment, ids).ok());
    auto back = ReadLabels(path, ids);
    ASSERT_TRUE(back.ok());
    EXPECT_TRUE(SamePartition(*back, assignment));
  }
  std::remove(path.c_str());
}

TEST(MetricsTest, JsonRoundTripAndNulls) {
  EvalReport report;
  report.objective = 12.5;
  report.num_clusters = 3;
  report.avg_precision = 0.75;
  report.ari = -0.1;
  report.runtime_ms = 4.25;
  report.seed = 18446744073709551615ull;
  const auto json = MetricsToJson(report);
  EXPECT_TRUE(json.at("avg_recall").is_null());
  EXPECT_TRUE(json.at("nmi").is_null());
  for (const char* key : {"objective", "num_clusters", "avg_precision",
                          "avg_recall", "ari", "nmi", "runtime_ms", "seed"}) {
    EXPECT_TRUE(json.contains(key)) << key;
  }

  const std::string path = TempPath("metrics.json");
  ASSERT_TRUE(WriteMetrics(path, report).ok());
  auto text = ReadFile(path);
  ASSERT_TRUE(text.ok());
  auto back = MetricsFromJson(nlohmann::json::parse(*text));
  ASSERT_TRUE(back.ok());
  EXPECT_EQ(back->objective, report.objective);
  EXPECT_EQ(back->num_clusters, report.num_clusters);
  EXPECT_EQ(back->avg_precision, report.avg_precision);
  EXPECT_EQ(back->avg_recall, std::nullopt);
  EXPECT_EQ(back->ari, report.ari);
  EXPECT_EQ(back->nmi, std::nullopt);
  EXPECT_EQ(back->runtime_ms, report.runtime_ms);
  EXPECT_EQ(back->seed, report.seed);
  std::remove(path.c_str());

  EXPECT_FALSE(MetricsFromJson(nlohmann::json::array()).ok());
  EXPECT_FALSE(MetricsFromJson(nlohmann::json{{"objective", 1.0}}).ok());
}

TEST(WriteEdgeListTest, RoundTripIsExact) {
  std::vector<Edge> edges = {{0, 1, 0.1}, {1, 2, 1.0 / 3.0}, {0, 3, -2.5e-7}};
  auto g = BuildGraph(edges).value();
  const std::string path = TempPath("edges.txt");
  ASSERT_TRUE(WriteEdgeList(path, g).ok());
  auto back = ReadEdgeList(path, true);
  ASSERT_TRUE(back.ok());
  for (NodeId v = 0; v < 4; ++v) {
    EXPECT_THAT(testing::AsVector(back->graph.Neighbors(v)), ElementsAreArray(g.Neighbors(v)));
    EXPECT_THAT(testing::AsVector(back->graph.NeighborWeights(v)),
                ElementsAreArray(g.NeighborWeights(v)));
  }
  std::remove(path.c_str());
}

TEST(RmatTest, NoSamplesGivesIsolatedVertices) {
  RmatParams params;
  params.scale = 4;
  params.num_samples = 0;
  auto g = GenerateRmat(params);
  ASSERT_TRUE(g.ok());
  EXPECT_EQ(g->NumNodes(), 16u);
  EXPECT_EQ(g->NumEdges(), 0u);
}

TEST(RmatTest, DeterministicGivenSeed) {
  RmatParams params;
  params.scale = 10;
  params.num_samples = 5 * 1024;
  params.seed = 42;
  auto a = GenerateRmat(params).value();
  auto b = GenerateRmat(params).value();
  ASSERT_EQ(a.NumEdges(), b.NumEdges());
  EXPECT_THAT(testing::AsVector(a.Offsets()), ElementsAreArray(b.Offsets()));
  for (NodeId v = 0; v < a.NumNodes(); ++v) {
    EXPECT_THAT(testing::AsVector(a.Neighbors(v)), ElementsAreArray(b.Neighbors(v)));
  }
  EXPECT_LE(a.NumEdges(), params.num_samples);
  params.seed = 43;
  auto c = GenerateRmat(params).value();
  bool differs = c.NumEdges() != a.NumEdges();
  for (NodeId v = 0; !differs && v < a.NumNodes(); ++v) {
    differs = a.Degree(v) != c.Degree(v);
  }
  EXPECT_TRUE(differs);
}

TEST(RmatTest, FirstQuadrantFrequency) {
  RmatParams params;
  params.scale = 14;
  params.num_samples = 50ull << 14;
  params.seed = 7;
  RmatStats stats;
  auto g = GenerateRmat(params, &stats);
  ASSERT_TRUE(g.ok());
  EXPECT_EQ(stats.samples, params.num_samples);
  const double fraction = static_cast<double>(stats.first_level_a) /
                          static_cast<double>(stats.samples);
  EXPECT_NEAR(fraction, 0.5, 0.02);
  EXPECT_EQ(g->NumEdges(),
            stats.samples - stats.self_loops - stats.duplicates);
}

TEST(RmatTest, Validation) {
  RmatParams params;
  params.scale = 31;
  EXPECT_FALSE(GenerateRmat(params).ok());
  params = {};
  params.a = 0.6;
  EXPECT_FALSE(GenerateRmat(params).ok());
  params = {};
  params.a = 0.7;
  params.d = -0.1;
  EXPECT_FALSE(GenerateRmat(params).ok());
  params = {};
  params.scale = -1;
  EXPECT_FALSE(GenerateRmat(params).ok());
}

}  // namespace
}  // namespace lambdacc
