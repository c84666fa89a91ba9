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

#ifndef LAMBDACC_BEST_MOVE_H_
#define LAMBDACC_BEST_MOVE_H_

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <span>
#include <utility>
#include <vector>

#include "lambdacc/clustering.h"
#include "lambdacc/graph.h"
#include "lambdacc/objective.h"
#include "lambdacc/parallel.h"

namespace lambdacc {

// Sentinel targets.
inline constexpr ClusterId kStay = std::numeric_limits<ClusterId>::max();
inline constexpr ClusterId kNewCluster = kStay - 1;

struct BestMove {
  ClusterId target = kStay;
  double delta = 0.0;
};

// Read access to a Clustering with the interface EvaluateBestMove expects.
class ClusteringView {
 public:
  explicit ClusteringView(const Clustering& clustering)
      : clustering_(clustering) {}
  ClusterId ClusterOf(NodeId v) const { return clustering_.ClusterOf(v); }
  double Mass(ClusterId c) const { return clustering_.ClusterMass(c); }
  std::int64_t Size(ClusterId c) const { return clustering_.ClusterSize(c); }

 private:
  const Clustering& clustering_;
};

// Sparse accumulator over a dense key range; Clear() costs O(touched).
class ClusterAccumulator {
 public:
  explicit ClusterAccumulator(std::size_t num_keys = 0)
      : sums_(num_keys, 0.0), seen_(num_keys, 0) {}

  void Resize(std::size_t num_keys) {
    Clear();
    sums_.assign(num_keys, 0.0);
    seen_.assign(num_keys, 0);
  }
  void Add(ClusterId c, double w) {
    if (!seen_[c]) {
      seen_[c] = 1;
      touched_.push_back(c);
    }
    sums_[c] += w;
  }
  double Get(ClusterId c) const { return seen_[c] ? sums_[c] : 0.0; }
  template <typename F>
  void ForEach(F&& f) const {
    for (ClusterId c : touched_) f(c, sums_[c]);
  }
  void Clear() {
    for (ClusterId c : touched_) {
      sums_[c] = 0.0;
      seen_[c] = 0;
    }
    touched_.clear();
  }

 private:
  std::vector<double> sums_;
  std::vector<std::uint8_t> seen_;
  std::vector<ClusterId> touched_;
};

// Picks the delta-maximizing target for v from per-cluster edge sums.
//
// Only strictly positive deltas move; ties go to the lowest cluster id. A new
// singleton is chosen only if it beats every adjacent cluster strictly, and is
// only offered when v shares its cluster. With `guard_singleton_swaps`, a
// vertex alone in its cluster may join another singleton only if that
// cluster's id is smaller, which stops two singletons from swapping into each
// other's cluster under lockstep moves.
template <typename View, typename ForEachSum>
BestMove SelectBestMove(const ClusteringParams& params, const View& view,
                        NodeId v, double edges_to_own, ForEachSum&& for_each_sum,
                        bool guard_singleton_swaps) {
  const double resolution = params.resolution;
  const double k = params.node_weights[v];
  const ClusterId own = view.ClusterOf(v);
  const double own_mass = view.Mass(own);
  const bool alone = view.Size(own) <= 1;

  BestMove best;
  for_each_sum([&](ClusterId c, double edges_to_c) {
    if (c == own) return;
    if (guard_singleton_swaps && alone && view.Size(c) == 1 && c > own) return;
    const double mass = view.Mass(c);
    const double delta =
        MoveGain(resolution, k, edges_to_own, own_mass, edges_to_c, mass);
    if (delta <= MoveGainTolerance(resolution, k, edges_to_own, own_mass,
                                   edges_to_c, mass)) {
      return;
    }
    if (delta > best.delta ||
        (delta == best.delta && best.target != kStay && c < best.target)) {
      best = {c, delta};
    }
  });
  if (!alone) {
    const double fresh =
        MoveGain(resolution, k, edges_to_own, own_mass, 0.0, 0.0);
    if (fresh > best.delta &&
        fresh > MoveGainTolerance(resolution, k, edges_to_own, own_mass, 0.0,
                                  0.0)) {
      best = {kNewCluster, fresh};
    }
  }
  return best;
}

// Best move for v accumulating edge sums sequentially in `scratch`, which
// must have at least as many keys as there are cluster ids.
template <typename View>
BestMove BestMoveSequential(const WeightedGraph& graph,
                            const ClusteringParams& params, const View& view,
                            NodeId v, ClusterAccumulator& scratch,
                            bool guard_singleton_swaps = false) {
  const auto nbrs = graph.Neighbors(v);
  const auto wts = graph.NeighborWeights(v);
  for (std::size_t i = 0; i < nbrs.size(); ++i) {
    scratch.Add(view.ClusterOf(nbrs[i]), wts[i]);
  }
  const BestMove best = SelectBestMove(
      params, view, v, scratch.Get(view.ClusterOf(v)),
      [&](auto&& f) { scratch.ForEach(f); }, guard_singleton_swaps);
  scratch.Clear();
  return best;
}

// Best move for v with the neighbor scan split into fixed-size chunks that
// are reduced in parallel. Chunk results are merged in chunk order, so sums
// do not depend on the thread count. `worker_scratch` holds one accumulator
// per worker and `total` one more, all sized to the cluster id range.
template <typename View>
BestMove BestMoveParallel(const WeightedGraph& graph,
                          const ClusteringParams& params, const View& view,
                          NodeId v, std::span<ClusterAccumulator> worker_scratch,
                          ClusterAccumulator& total,
                          bool guard_singleton_swaps = false) {
  constexpr std::size_t kChunk = 2048;
  const auto nbrs = graph.Neighbors(v);
  const auto wts = graph.NeighborWeights(v);
  const std::size_t num_chunks = (nbrs.size() + kChunk - 1) / kChunk;
  std::vector<std::vector<std::pair<ClusterId, double>>> partial(num_chunks);
  ParallelFor(
      0, num_chunks,
      [&](std::size_t chunk) {
        ClusterAccumulator& acc =
            worker_scratch[static_cast<std::size_t>(WorkerId())];
        const std::size_t lo = chunk * kChunk;
        const std::size_t hi = std::min(nbrs.size(), lo + kChunk);
        for (std::size_t i = lo; i < hi; ++i) {
          acc.Add(view.ClusterOf(nbrs[i]), wts[i]);
        }
        acc.ForEach([&](ClusterId c, double w) {
          partial[chunk].emplace_back(c, w);
        });
        acc.Clear();
      },
      1);
  for (const auto& sums : partial) {
    for (const auto& [c, w] : sums) total.Add(c, w);
  }
  const BestMove best = SelectBestMove(
      params, view, v, total.Get(view.ClusterOf(v)),
      [&](auto&& f) { total.ForEach(f); }, guard_singleton_swaps);
  total.Clear();
  return best;
}

}  // namespace lambdacc

#endif  // LAMBDACC_BEST_MOVE_H_
