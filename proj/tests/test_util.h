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

// Shared fixtures and independent reference implementations for tests. The
// oracles here work on dense matrices built straight from edge lists and do
// not call into the library's objective code.

#ifndef LAMBDACC_TESTS_TEST_UTIL_H_
#define LAMBDACC_TESTS_TEST_UTIL_H_

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <random>
#include <span>
#include <type_traits>
#include <utility>
#include <vector>

#include "lambdacc/clustering.h"
#include "lambdacc/graph.h"
#include "lambdacc/objective.h"

namespace lambdacc::testing {

// Copies a span so gmock container matchers can inspect it.
template <typename T>
std::vector<std::remove_const_t<T>> AsVector(std::span<T> values) {
  return {values.begin(), values.end()};
}

using Matrix = std::vector<std::vector<double>>;

struct Instance {
  std::vector<Edge> edges;
  WeightedGraph graph;
  Matrix adjacency;  // Dense symmetric weights, zero diagonal.
};

inline Matrix DenseAdjacency(std::size_t n, const std::vector<Edge>& edges) {
  Matrix a(n, std::vector<double>(n, 0.0));
  for (const Edge& e : edges) {
    if (e.u == e.v) continue;
    a[e.u][e.v] += e.weight;
    a[e.v][e.u] += e.weight;
  }
  return a;
}

// G(n, p) with weights uniform in [lo, hi]; each pair appears at most once.
inline Instance RandomInstance(std::size_t n, double p, double lo, double hi,
                               std::mt19937_64& rng) {
  std::bernoulli_distribution coin(p);
  std::uniform_real_distribution<double> weight(lo, hi);
  Instance inst;
  for (NodeId u = 0; u < n; ++u) {
    for (NodeId v = u + 1; v < n; ++v) {
      if (coin(rng)) inst.edges.push_back({u, v, weight(rng)});
    }
  }
  inst.graph = BuildGraph(inst.edges, n).value();
  inst.adjacency = DenseAdjacency(n, inst.edges);
  return inst;
}

inline std::vector<ClusterId> RandomAssignment(std::size_t n,
                                               std::size_t max_clusters,
                                               std::mt19937_64& rng) {
  std::uniform_int_distribution<std::size_t> pick(
      0, std::max<std::size_t>(1, std::min(n, max_clusters)) - 1);
  // Random ids drawn from [0, n) so cluster ids are not dense.
  std::vector<ClusterId> ids(n);
  for (std::size_t i = 0; i < n; ++i) ids[i] = static_cast<ClusterId>(i);
  std::shuffle(ids.begin(), ids.end(), rng);
  std::vector<ClusterId> out(n);
  for (auto& c : out) c = ids[pick(rng)];
  return out;
}

inline std::vector<double> RandomWeights(std::size_t n, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> w(0.0, 3.0);
  std::vector<double> k(n);
  for (auto& x : k) x = w(rng);
  return k;
}

// Sum of w'_ij over unordered same-cluster pairs i < j, straight from the
// definition of the rescaled weight.
inline double PairSumObjective(const Matrix& adjacency, double resolution,
                               const std::vector<double>& k,
                               std::span<const ClusterId> assignment) {
  double total = 0.0;
  const std::size_t n = adjacency.size();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (assignment[i] != assignment[j]) continue;
      total += adjacency[i][j] - resolution * k[i] * k[j];
    }
  }
  return total;
}

// Q = 1/(2m) sum_{i != j} (A_ij - gamma d_i d_j / 2m) [same cluster], with
// weighted degrees and 2m = sum of A.
inline double DirectModularity(const Matrix& adjacency, double gamma,
                               std::span<const ClusterId> assignment) {
  const std::size_t n = adjacency.size();
  std::vector<double> d(n, 0.0);
  double two_m = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) d[i] += adjacency[i][j];
    two_m += d[i];
  }
  double q = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (i == j || assignment[i] != assignment[j]) continue;
      q += adjacency[i][j] - gamma * d[i] * d[j] / two_m;
    }
  }
  return q / two_m;
}

// Best partition value by enumerating restricted growth strings.
inline double EnumerateBest(const Matrix& adjacency, double resolution,
                            const std::vector<double>& k) {
  const std::size_t n = adjacency.size();
  std::vector<ClusterId> a(n, 0);
  double best = PairSumObjective(adjacency, resolution, k, a);
  if (n == 0) return best;
  std::vector<ClusterId> max_prefix(n, 0);
  while (true) {
    std::size_t i = n - 1;
    while (i > 0 && a[i] == max_prefix[i - 1] + 1) --i;
    if (i == 0) break;
    ++a[i];
    for (std::size_t j = i + 1; j < n; ++j) a[j] = 0;
    for (std::size_t j = i; j < n; ++j) {
      max_prefix[j] = std::max(max_prefix[j - 1], a[j]);
    }
    best = std::max(best, PairSumObjective(adjacency, resolution, k, a));
  }
  return best;
}

struct Planted {
  std::vector<Edge> edges;
  WeightedGraph graph;
  std::vector<ClusterId> labels;
};

inline Planted PlantedPartition(std::size_t num_clusters, std::size_t size,
                                double p_in, double p_out,
                                std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  Planted out;
  const std::size_t n = num_clusters * size;
  out.labels.resize(n);
  for (std::size_t v = 0; v < n; ++v) {
    out.labels[v] = static_cast<ClusterId>(v / size);
  }
  for (NodeId a = 0; a < n; ++a) {
    for (NodeId b = a + 1; b < n; ++b) {
      const double p = out.labels[a] == out.labels[b] ? p_in : p_out;
      if (u(rng) < p) out.edges.push_back({a, b, 1.0});
    }
  }
  out.graph = BuildGraph(out.edges, n).value();
  return out;
}

inline constexpr ClusterId kRefStay = std::numeric_limits<ClusterId>::max();
inline constexpr ClusterId kRefNew = kRefStay - 1;

// One lockstep round: every vertex's desired target against the frozen
// `assignment`, computed from the dense matrix. Moves need a strictly
// positive gain; ties go to the lowest cluster id; a vertex alone in its
// cluster may only join another singleton with a smaller id; a fresh
// singleton is offered to non-alone vertices and must win strictly.
inline std::vector<ClusterId> JacobiDesired(
    const Matrix& adjacency, double resolution, const std::vector<double>& k,
    const std::vector<ClusterId>& assignment) {
  const std::size_t n = adjacency.size();
  std::vector<double> mass(n, 0.0);
  std::vector<int> size(n, 0);
  for (std::size_t v = 0; v < n; ++v) {
    mass[assignment[v]] += k[v];
    ++size[assignment[v]];
  }
  std::vector<ClusterId> desired(n, kRefStay);
  for (std::size_t v = 0; v < n; ++v) {
    const ClusterId own = assignment[v];
    std::vector<double> to(n, 0.0);
    std::vector<bool> adjacent(n, false);
    for (std::size_t u = 0; u < n; ++u) {
      if (u == v || adjacency[v][u] == 0.0) continue;
      to[assignment[u]] += adjacency[v][u];
      adjacent[assignment[u]] = true;
    }
    // Gain of joining a cluster with edge weight e_t and mass K_t, written
    // as (e_t - lambda k K_t) - (e_own - lambda k K_own + lambda k^2).
    // Gains within 1e-12 of the magnitude of the terms count as zero.
    auto gain = [&](double e_t, double mass_t) {
      const double g = (e_t - resolution * k[v] * mass_t) -
                       (to[own] - resolution * k[v] * mass[own] +
                        resolution * k[v] * k[v]);
      const double scale =
          std::abs(e_t) + std::abs(to[own]) +
          std::abs(resolution * k[v]) * (mass_t + mass[own] + k[v]);
      return g > 1e-12 * scale ? g : 0.0;
    };
    double best = 0.0;
    ClusterId target = kRefStay;
    const bool alone = size[own] == 1;
    for (ClusterId c = 0; c < n; ++c) {
      if (!adjacent[c] || c == own) continue;
      if (alone && size[c] == 1 && c > own) continue;
      const double g = gain(to[c], mass[c]);
      if (g > best) {
        best = g;
        target = c;
      }
    }
    if (!alone && gain(0.0, 0.0) > best) target = kRefNew;
    desired[v] = target;
  }
  return desired;
}

}  // namespace lambdacc::testing

#endif  // LAMBDACC_TESTS_TEST_UTIL_H_
