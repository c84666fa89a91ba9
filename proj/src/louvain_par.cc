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

#include "lambdacc/louvain_par.h"

#include <omp.h>

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <memory>
#include <random>
#include <span>
#include <utility>
#include <vector>

#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "absl/strings/str_cat.h"
#include "coarsen.h"
#include "lambdacc/best_move.h"
#include "lambdacc/parallel.h"
#include "lambdacc/status_macros.h"

namespace lambdacc {
namespace {

// Clustering state shared by concurrently moving vertices. Every field is
// accessed through relaxed atomics; masses and sizes are only exact at
// iteration boundaries, after Reconcile().
class SharedClustering {
 public:
  explicit SharedClustering(const Clustering& clustering)
      : assignment_(clustering.NumNodes()),
        mass_(clustering.NumNodes()),
        size_(clustering.NumNodes()) {
    const std::size_t n = clustering.NumNodes();
    ParallelFor(0, n, [&](std::size_t i) {
      assignment_[i].store(clustering.ClusterOf(static_cast<NodeId>(i)),
                           std::memory_order_relaxed);
      mass_[i].store(clustering.ClusterMass(static_cast<ClusterId>(i)),
                     std::memory_order_relaxed);
      size_[i].store(clustering.ClusterSize(static_cast<ClusterId>(i)),
                     std::memory_order_relaxed);
    });
  }

  std::size_t NumNodes() const { return assignment_.size(); }
  ClusterId ClusterOf(NodeId v) const {
    return assignment_[v].load(std::memory_order_relaxed);
  }
  double Mass(ClusterId c) const {
    return mass_[c].load(std::memory_order_relaxed);
  }
  std::int64_t Size(ClusterId c) const {
    return size_[c].load(std::memory_order_relaxed);
  }

  void Leave(ClusterId from, double k) {
    size_[from].fetch_sub(1, std::memory_order_relaxed);
    mass_[from].fetch_sub(k, std::memory_order_relaxed);
  }

  void Join(NodeId v, ClusterId to, double k) {
    size_[to].fetch_add(1, std::memory_order_relaxed);
    mass_[to].fetch_add(k, std::memory_order_relaxed);
    assignment_[v].store(to, std::memory_order_relaxed);
  }

  // Puts v (already removed from its cluster) into an empty cluster, scanning
  // ids from `hint`. After Leave() at most n - 1 vertices are counted, so an
  // id with size zero exists.
  ClusterId JoinEmpty(NodeId v, double k, NodeId hint) {
    const std::size_t n = NumNodes();
    for (std::size_t i = 0;; ++i) {
      const auto id = static_cast<ClusterId>((hint + i) % n);
      std::int64_t expected = 0;
      if (size_[id].load(std::memory_order_relaxed) == 0 &&
          size_[id].compare_exchange_strong(expected, 1,
                                            std::memory_order_relaxed)) {
        mass_[id].fetch_add(k, std::memory_order_relaxed);
        assignment_[v].store(id, std::memory_order_relaxed);
        return id;
      }
    }
  }

  void SetAssignment(NodeId v, ClusterId c) {
    assignment_[v].store(c, std::memory_order_relaxed);
  }

  double MassSum() const {
    return BlockedSum(NumNodes(), [&](std::size_t c) {
      return mass_[c].load(std::memory_order_relaxed);
    });
  }

  // Recomputes sizes and masses from the assignment. Masses are summed in
  // ascending vertex order so the result is independent of the schedule.
  void Reconcile(std::span<const double> node_weights) {
    const std::size_t n = NumNodes();
    std::vector<double> mass(n, 0.0);
    std::vector<std::int64_t> size(n, 0);
    for (std::size_t v = 0; v < n; ++v) {
      const ClusterId c = ClusterOf(static_cast<NodeId>(v));
      mass[c] += node_weights[v];
      ++size[c];
    }
    ParallelFor(0, n, [&](std::size_t c) {
      mass_[c].store(mass[c], std::memory_order_relaxed);
      size_[c].store(size[c], std::memory_order_relaxed);
    }, 4096);
  }

  std::vector<ClusterId> AssignmentSnapshot() const {
    std::vector<ClusterId> out(NumNodes());
    ParallelFor(0, NumNodes(), [&](std::size_t v) {
      out[v] = ClusterOf(static_cast<NodeId>(v));
    }, 4096);
    return out;
  }

 private:
  std::vector<std::atomic<ClusterId>> assignment_;
  std::vector<std::atomic<double>> mass_;
  std::vector<std::atomic<std::int64_t>> size_;
};

// Stable sort; blocks are sorted in parallel and merged pairwise.
template <typename T, typename Less>
void ParallelStableSort(std::vector<T>& values, Less less) {
  const std::size_t n = values.size();
  const std::size_t workers = static_cast<std::size_t>(NumWorkers());
  if (workers <= 1 || n < (std::size_t{1} << 15)) {
    std::stable_sort(values.begin(), values.end(), less);
    return;
  }
  const std::size_t num_blocks = workers * 4;
  const std::size_t block = (n + num_blocks - 1) / num_blocks;
  ParallelFor(
      0, num_blocks,
      [&](std::size_t b) {
        const std::size_t lo = std::min(n, b * block);
        const std::size_t hi = std::min(n, lo + block);
        std::stable_sort(values.begin() + lo, values.begin() + hi, less);
      },
      1);
  for (std::size_t width = block; width < n; width *= 2) {
    const std::size_t num_pairs = (n + 2 * width - 1) / (2 * width);
    ParallelFor(
        0, num_pairs,
        [&](std::size_t p) {
          const std::size_t lo = p * 2 * width;
          const std::size_t mid = std::min(n, lo + width);
          const std::size_t hi = std::min(n, lo + 2 * width);
          if (mid < hi) {
            std::inplace_merge(values.begin() + lo, values.begin() + mid,
                               values.begin() + hi, less);
          }
        },
        1);
  }
}

// Membership mask of the next frontier. `assignment` is the state after the
// moves; `prev_cluster` is indexed by vertex.
std::vector<std::uint8_t> FrontierMask(FrontierPolicy policy,
                                       std::span<const NodeId> moved,
                                       std::span<const ClusterId> prev_cluster,
                                       const WeightedGraph& graph,
                                       std::span<const ClusterId> assignment) {
  const std::size_t n = graph.NumNodes();
  std::vector<std::uint8_t> mask(n, 0);
  auto mark = [&](NodeId v) {
    std::atomic_ref<std::uint8_t>(mask[v]).store(1, std::memory_order_relaxed);
  };
  auto mark_neighbors = [&](NodeId v) {
    for (NodeId u : graph.Neighbors(v)) mark(u);
  };
  switch (policy) {
    case FrontierPolicy::kAllVertices:
      std::fill(mask.begin(), mask.end(), 1);
      break;
    case FrontierPolicy::kVertexNeighbors:
      ParallelFor(0, moved.size(), [&](std::size_t i) { mark_neighbors(moved[i]); });
      break;
    case FrontierPolicy::kClusterNeighbors: {
      if (moved.empty()) break;
      std::vector<std::uint8_t> is_source(n, 0);
      std::vector<std::uint8_t> is_destination(n, 0);
      for (NodeId v : moved) {
        is_source[prev_cluster[v]] = 1;
        is_destination[assignment[v]] = 1;
      }
      ParallelFor(0, moved.size(), [&](std::size_t i) { mark_neighbors(moved[i]); });
      ParallelFor(0, n, [&](std::size_t vi) {
        const auto v = static_cast<NodeId>(vi);
        const ClusterId c = assignment[v];
        if (is_destination[c]) {
          mark(v);
          mark_neighbors(v);
        } else if (is_source[c]) {
          mark_neighbors(v);
        }
      }, 1024);
      break;
    }
  }
  return mask;
}

struct MoveRecord {
  std::vector<NodeId> vertices;
  std::vector<ClusterId> prev_cluster;  // Indexed by vertex.
};

// Best moves on one level. `level` and `refining` only affect tracing and
// whether no-harm application is used.
absl::StatusOr<std::pair<Clustering, bool>> RunBestMoves(
    const WeightedGraph& graph, const ClusteringParams& params,
    const Clustering& initial, const ParOptions& options, int level,
    bool refining) {
  const std::size_t n = graph.NumNodes();
  const auto& k = params.node_weights;
  const bool synchronous = options.schedule == Schedule::kSynchronous;
  const bool no_harm = synchronous && refining && options.no_harm_refinement;
  const auto degree_threshold =
      static_cast<std::size_t>(std::max(1, options.degree_threshold));

  SharedClustering state(initial);
  const double total_node_weight =
      BlockedSum(n, [&](std::size_t v) { return k[v]; });
  // One accumulator per worker plus one for merging wide reductions.
  std::vector<ClusterAccumulator> scratch(
      static_cast<std::size_t>(NumWorkers()) + 1);
  for (auto& s : scratch) s.Resize(n);
  const std::span<ClusterAccumulator> worker_scratch(scratch.data(),
                                                     scratch.size() - 1);
  std::vector<ClusterId> desired(synchronous ? n : 0, kStay);
  std::vector<std::uint8_t> moved_flag(n, 0);
  std::vector<ClusterId> prev_cluster(n, 0);
  std::mt19937_64 rng(options.seed);

  auto local_best = [&](NodeId v) {
    ClusterAccumulator& acc =
        scratch[static_cast<std::size_t>(WorkerId())];
    return BestMoveSequential(graph, params, state, v, acc,
                              /*guard_singleton_swaps=*/synchronous);
  };
  auto wide_best = [&](NodeId v) {
    return BestMoveParallel(graph, params, state, v, worker_scratch,
                            scratch.back(),
                            /*guard_singleton_swaps=*/synchronous);
  };
  auto apply_async = [&](NodeId v, const BestMove& best) {
    if (best.target == kStay) return;
    const ClusterId from = state.ClusterOf(v);
    state.Leave(from, k[v]);
    if (best.target == kNewCluster) {
      state.JoinEmpty(v, k[v], v);
    } else {
      state.Join(v, best.target, k[v]);
    }
    prev_cluster[v] = from;
    std::atomic_ref<std::uint8_t>(moved_flag[v]).store(
        1, std::memory_order_relaxed);
  };

  Frontier frontier = Frontier::All(n);
  bool any_moved = false;
  for (int iteration = 0; iteration < options.num_iter; ++iteration) {
    std::vector<NodeId> members = frontier.Members();
    if (!synchronous) std::shuffle(members.begin(), members.end(), rng);
    std::vector<NodeId> wide;
    std::vector<NodeId> narrow;
    narrow.reserve(members.size());
    for (NodeId v : members) {
      (graph.Degree(v) >= degree_threshold ? wide : narrow).push_back(v);
    }

    if (synchronous) {
      ParallelFor(0, narrow.size(), [&](std::size_t i) {
        desired[narrow[i]] = local_best(narrow[i]).target;
      }, 64);
      for (NodeId v : wide) desired[v] = wide_best(v).target;
    } else {
      ParallelFor(0, narrow.size(), [&](std::size_t i) {
        const NodeId v = narrow[i];
        apply_async(v, local_best(v));
      }, 64);
      for (NodeId v : wide) apply_async(v, wide_best(v));
    }

    if (synchronous && no_harm) {
      // Sequential re-check of each computed move against the live state.
      std::sort(members.begin(), members.end());
      state.Reconcile(k);
      ClusterAccumulator& acc = scratch[0];
      for (NodeId v : members) {
        const ClusterId target = desired[v];
        if (target == kStay) continue;
        const ClusterId from = state.ClusterOf(v);
        for (std::size_t i = 0; i < graph.Degree(v); ++i) {
          acc.Add(state.ClusterOf(graph.Neighbors(v)[i]),
                  graph.NeighborWeights(v)[i]);
        }
        bool improves = false;
        double delta = 0.0;
        const bool fresh = target == kNewCluster;
        if ((fresh && state.Size(from) > 1) || (!fresh && target != from)) {
          const double edges_to = fresh ? 0.0 : acc.Get(target);
          const double mass_to = fresh ? 0.0 : state.Mass(target);
          delta = MoveGain(params.resolution, k[v], acc.Get(from),
                           state.Mass(from), edges_to, mass_to);
          improves = delta > MoveGainTolerance(params.resolution, k[v],
                                               acc.Get(from), state.Mass(from),
                                               edges_to, mass_to);
        }
        acc.Clear();
        if (improves) {
          BestMove move{target, delta};
          apply_async(v, move);
        }
      }
    } else if (synchronous) {
      std::vector<NodeId> to_new;
      for (NodeId v : members) {
        const ClusterId target = desired[v];
        if (target == kStay) continue;
        prev_cluster[v] = state.ClusterOf(v);
        moved_flag[v] = 1;
        if (target == kNewCluster) to_new.push_back(v);
      }
      ParallelFor(0, members.size(), [&](std::size_t i) {
        const NodeId v = members[i];
        if (desired[v] != kStay && desired[v] != kNewCluster) {
          state.SetAssignment(v, desired[v]);
        }
      }, 1024);
      if (!to_new.empty()) {
        // Ids left empty once the vertices forming new clusters have left are
        // handed out in ascending order; there are at least as many such ids
        // as such vertices.
        std::vector<std::uint8_t> occupied(n, 0);
        std::vector<std::uint8_t> leaving(n, 0);
        for (NodeId v : to_new) leaving[v] = 1;
        for (std::size_t v = 0; v < n; ++v) {
          if (!leaving[v]) occupied[state.ClusterOf(static_cast<NodeId>(v))] = 1;
        }
        std::size_t next = 0;
        for (NodeId v : to_new) {
          while (occupied[next]) ++next;
          state.SetAssignment(v, static_cast<ClusterId>(next));
          occupied[next] = 1;
        }
      }
    }

    MoveRecord moved;
    for (NodeId v : members) {
      if (moved_flag[v]) {
        moved.vertices.push_back(v);
        moved_flag[v] = 0;
      }
    }
    std::sort(moved.vertices.begin(), moved.vertices.end());

    std::vector<ClusterId> assignment = state.AssignmentSnapshot();
    if (options.on_iteration) {
      IterationTrace trace;
      trace.level = level;
      trace.iteration = iteration;
      trace.frontier_size = members.size();
      trace.num_moved = moved.vertices.size();
      trace.mass_sum = state.MassSum();
      trace.total_node_weight = total_node_weight;
      trace.desired = desired;
      trace.assignment = assignment;
      options.on_iteration(trace);
    }
    state.Reconcile(k);
    if (synchronous) {
      for (NodeId v : members) desired[v] = kStay;
    }
    if (moved.vertices.empty()) break;
    any_moved = true;
    if (iteration + 1 < options.num_iter) {
      frontier = Frontier::FromMask(
          FrontierMask(options.frontier, moved.vertices, prev_cluster, graph,
                       assignment),
          graph);
      if (frontier.Empty()) break;
    }
  }

  ASSIGN_OR_RETURN(Clustering result,
                   Clustering::FromAssignment(state.AssignmentSnapshot(), k));
  return std::make_pair(std::move(result), any_moved);
}

absl::Status CheckInputs(const WeightedGraph& graph,
                         const ClusteringParams& params,
                         const Clustering& clustering) {
  RETURN_IF_ERROR(ValidateParams(graph, params));
  if (clustering.NumNodes() != graph.NumNodes()) {
    return absl::InvalidArgumentError("clustering does not match graph");
  }
  return absl::OkStatus();
}

}  // namespace

absl::Status ValidateOptions(const ParOptions& options) {
  if (options.num_iter < 1) {
    return absl::InvalidArgumentError("num_iter must be at least 1");
  }
  if (options.threads < 1) {
    return absl::InvalidArgumentError("threads must be at least 1");
  }
  if (options.degree_threshold < 1) {
    return absl::InvalidArgumentError("degree_threshold must be positive");
  }
  return absl::OkStatus();
}

absl::StatusOr<std::pair<Clustering, bool>> ParBestMoves(
    const WeightedGraph& graph, const ClusteringParams& params,
    Clustering clustering, const ParOptions& options) {
  RETURN_IF_ERROR(ValidateOptions(options));
  RETURN_IF_ERROR(CheckInputs(graph, params, clustering));
  ScopedParallelism parallelism(options.threads);
  return RunBestMoves(graph, params, clustering, options, /*level=*/0,
                      /*refining=*/false);
}

absl::StatusOr<Frontier> ComputeFrontier(FrontierPolicy policy,
                                         std::span<const NodeId> moved,
                                         std::span<const ClusterId> prev_cluster,
                                         std::span<const ClusterId> new_cluster,
                                         const WeightedGraph& graph,
                                         const Clustering& clustering) {
  const std::size_t n = graph.NumNodes();
  if (clustering.NumNodes() != n) {
    return absl::InvalidArgumentError("clustering does not match graph");
  }
  if (prev_cluster.size() != moved.size() || new_cluster.size() != moved.size()) {
    return absl::InvalidArgumentError(
        "moved, prev_cluster and new_cluster must have equal length");
  }
  std::vector<ClusterId> prev_by_vertex(n, 0);
  for (std::size_t i = 0; i < moved.size(); ++i) {
    if (moved[i] >= n || prev_cluster[i] >= n || new_cluster[i] >= n) {
      return absl::OutOfRangeError("moved vertex or cluster id out of range");
    }
    if (clustering.ClusterOf(moved[i]) != new_cluster[i]) {
      return absl::InvalidArgumentError(absl::StrCat(
          "vertex ", moved[i], " is not in its reported new cluster"));
    }
    prev_by_vertex[moved[i]] = prev_cluster[i];
  }
  if (moved.empty()) return Frontier::None(n);
  return Frontier::FromMask(FrontierMask(policy, moved, prev_by_vertex, graph,
                                         clustering.Assignment()),
                            graph);
}

absl::StatusOr<CompressedLevel> ParCompress(const WeightedGraph& graph,
                                            const ClusteringParams& params,
                                            const Clustering& clustering) {
  RETURN_IF_ERROR(CheckInputs(graph, params, clustering));
  const std::size_t n = graph.NumNodes();
  const auto assignment = clustering.Assignment();
  CompressedLevel level;

  // Coarse ids follow the smallest member of each cluster.
  std::vector<NodeId> smallest(n, ~NodeId{0});
  ParallelFor(0, n, [&](std::size_t v) {
    std::atomic_ref<NodeId> slot(smallest[assignment[v]]);
    NodeId seen = slot.load(std::memory_order_relaxed);
    while (v < seen && !slot.compare_exchange_weak(
                           seen, static_cast<NodeId>(v),
                           std::memory_order_relaxed)) {
    }
  }, 4096);
  std::vector<NodeId> rank(n + 1, 0);
  ParallelFor(0, n, [&](std::size_t v) {
    rank[v] = smallest[assignment[v]] == v ? 1 : 0;
  }, 4096);
  const auto num_coarse = static_cast<std::size_t>(ExclusiveScan(rank));
  level.mapping.resize(n);
  ParallelFor(0, n, [&](std::size_t v) {
    level.mapping[v] = rank[smallest[assignment[v]]];
  }, 4096);

  // Masses: bucket members by coarse id (ascending vertex order inside a
  // bucket) and reduce buckets in parallel.
  const auto& k = params.node_weights;
  {
    std::vector<std::uint64_t> bucket(num_coarse + 1, 0);
    for (std::size_t v = 0; v < n; ++v) ++bucket[level.mapping[v]];
    ExclusiveScan(bucket);
    std::vector<NodeId> members(n);
    std::vector<std::uint64_t> cursor(bucket.begin(), bucket.end() - 1);
    for (std::size_t v = 0; v < n; ++v) {
      members[cursor[level.mapping[v]]++] = static_cast<NodeId>(v);
    }
    level.node_weights.assign(num_coarse, 0.0);
    ParallelFor(0, num_coarse, [&](std::size_t c) {
      double sum = 0;
      for (std::uint64_t i = bucket[c]; i < bucket[c + 1]; ++i) {
        sum += k[members[i]];
      }
      level.node_weights[c] = sum;
    }, 1024);
  }

  const double intra = BlockedSum(n, [&](std::size_t u) {
    const auto nbrs = graph.Neighbors(static_cast<NodeId>(u));
    const auto wts = graph.NeighborWeights(static_cast<NodeId>(u));
    double sum = 0;
    for (std::size_t i = 0; i < nbrs.size(); ++i) {
      if (nbrs[i] > u && level.mapping[nbrs[i]] == level.mapping[u]) {
        sum += wts[i];
      }
    }
    return sum;
  });
  const double sum_mass_sq = BlockedSum(num_coarse, [&](std::size_t c) {
    return level.node_weights[c] * level.node_weights[c];
  });
  const double sum_k_sq =
      BlockedSum(n, [&](std::size_t v) { return k[v] * k[v]; });
  level.internal_offset =
      intra - params.resolution * (sum_mass_sq - sum_k_sq) / 2;

  // Inter-cluster edges keyed by coarse endpoint pair, in (u, x) order.
  struct KeyedWeight {
    std::uint64_t key;
    double weight;
  };
  std::vector<std::uint64_t> offsets(n + 1, 0);
  ParallelFor(0, n, [&](std::size_t u) {
    std::uint64_t count = 0;
    for (NodeId x : graph.Neighbors(static_cast<NodeId>(u))) {
      if (x > u && level.mapping[x] != level.mapping[u]) ++count;
    }
    offsets[u] = count;
  });
  const std::uint64_t num_keyed = ExclusiveScan(offsets);
  std::vector<KeyedWeight> keyed(num_keyed);
  ParallelFor(0, n, [&](std::size_t u) {
    const auto nbrs = graph.Neighbors(static_cast<NodeId>(u));
    const auto wts = graph.NeighborWeights(static_cast<NodeId>(u));
    std::uint64_t out = offsets[u];
    for (std::size_t i = 0; i < nbrs.size(); ++i) {
      if (nbrs[i] <= u) continue;
      NodeId a = level.mapping[u];
      NodeId b = level.mapping[nbrs[i]];
      if (a == b) continue;
      if (a > b) std::swap(a, b);
      keyed[out++] = {internal::PairKey(a, b), wts[i]};
    }
  });
  ParallelStableSort(keyed, [](const KeyedWeight& x, const KeyedWeight& y) {
    return x.key < y.key;
  });
  std::vector<std::uint64_t> starts;
  for (std::uint64_t i = 0; i < num_keyed; ++i) {
    if (i == 0 || keyed[i].key != keyed[i - 1].key) starts.push_back(i);
  }
  starts.push_back(num_keyed);
  std::vector<internal::CoarseEdge> edges(starts.size() - 1);
  ParallelFor(0, edges.size(), [&](std::size_t s) {
    double sum = 0;
    for (std::uint64_t i = starts[s]; i < starts[s + 1]; ++i) {
      sum += keyed[i].weight;
    }
    const std::uint64_t key = keyed[starts[s]].key;
    edges[s] = {static_cast<NodeId>(key >> 32),
                static_cast<NodeId>(key & 0xffffffffu), sum};
  }, 1024);
  level.graph = internal::GraphFromSortedEdges(num_coarse, edges);
  return level;
}

absl::StatusOr<Clustering> ParFlatten(const Clustering& fine,
                                      const Clustering& coarse,
                                      std::span<const NodeId> mapping) {
  RETURN_IF_ERROR(internal::CheckMapping(fine, mapping, coarse.NumNodes()));
  return internal::FlattenAssignment(mapping, coarse, /*parallel=*/true);
}

absl::StatusOr<Clustering> ParallelCc(const WeightedGraph& graph,
                                      const ClusteringParams& params,
                                      const ParOptions& options) {
  RETURN_IF_ERROR(ValidateOptions(options));
  RETURN_IF_ERROR(ValidateParams(graph, params));
  ScopedParallelism parallelism(options.threads);

  struct Level {
    // Kept only while it is needed for refinement.
    std::unique_ptr<WeightedGraph> graph;
    ClusteringParams params;
    std::vector<NodeId> mapping;
  };
  std::vector<Level> levels;
  std::unique_ptr<WeightedGraph> owned;
  const WeightedGraph* current = &graph;
  ClusteringParams current_params = params;

  auto level_options = [&](int level) {
    ParOptions copy = options;
    copy.seed = MixSeed(options.seed, static_cast<std::uint64_t>(level));
    return copy;
  };

  Clustering result;
  for (int depth = 0;; ++depth) {
    ASSIGN_OR_RETURN(
        auto moves,
        RunBestMoves(*current, current_params,
                     Clustering::Singletons(current_params.node_weights),
                     level_options(depth), depth, /*refining=*/false));
    auto& [clustering, moved] = moves;
    if (!moved || clustering.NumClusters() == current->NumNodes()) {
      result = std::move(clustering);
      break;
    }
    ASSIGN_OR_RETURN(CompressedLevel coarse,
                     ParCompress(*current, current_params, clustering));
    Level level;
    level.mapping = std::move(coarse.mapping);
    if (options.refine) {
      // Level 0 is the caller's graph and is referenced directly.
      if (depth > 0) level.graph = std::move(owned);
      level.params = current_params;
    }
    levels.push_back(std::move(level));
    current_params.node_weights = std::move(coarse.node_weights);
    owned = std::make_unique<WeightedGraph>(std::move(coarse.graph));
    current = owned.get();
  }
  owned.reset();

  for (std::size_t i = levels.size(); i-- > 0;) {
    Level& level = levels[i];
    ASSIGN_OR_RETURN(result, internal::FlattenAssignment(level.mapping, result,
                                                         /*parallel=*/true));
    if (options.refine) {
      const WeightedGraph& level_graph = i == 0 ? graph : *level.graph;
      ASSIGN_OR_RETURN(
          auto refined,
          RunBestMoves(level_graph, level.params, result,
                       level_options(static_cast<int>(levels.size() + i)),
                       static_cast<int>(i), /*refining=*/true));
      if (options.on_refine) {
        RefineTrace trace;
        trace.level = static_cast<int>(i);
        trace.graph = &level_graph;
        trace.params = &level.params;
        trace.before = &result;
        trace.after = &refined.first;
        options.on_refine(trace);
      }
      result = std::move(refined.first);
      level.graph.reset();
    }
  }
  return result;
}

absl::StatusOr<BestMove> PerVertexBestTarget(const WeightedGraph& graph,
                                             const ClusteringParams& params,
                                             const Clustering& clustering,
                                             NodeId v, int degree_threshold,
                                             Accumulation accumulation) {
  RETURN_IF_ERROR(CheckInputs(graph, params, clustering));
  if (v >= graph.NumNodes()) {
    return absl::OutOfRangeError(absl::StrCat("vertex ", v));
  }
  const ClusteringView view(clustering);
  bool parallel = accumulation == Accumulation::kParallel;
  if (accumulation == Accumulation::kAuto) {
    parallel = graph.Degree(v) >= static_cast<std::size_t>(
                                      std::max(1, degree_threshold));
  }
  if (!parallel) {
    ClusterAccumulator scratch(graph.NumNodes());
    return BestMoveSequential(graph, params, view, v, scratch);
  }
  std::vector<ClusterAccumulator> scratch(
      static_cast<std::size_t>(NumWorkers()) + 1);
  for (auto& s : scratch) s.Resize(graph.NumNodes());
  return BestMoveParallel(
      graph, params, view, v,
      std::span<ClusterAccumulator>(scratch.data(), scratch.size() - 1),
      scratch.back());
}

}  // namespace lambdacc
