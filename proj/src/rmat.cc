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

#include "lambdacc/rmat.h"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "absl/strings/str_cat.h"
#include "lambdacc/parallel.h"

namespace lambdacc {
namespace {

constexpr std::uint64_t kBlock = 1 << 16;

}  // namespace

absl::Status ValidateRmatParams(const RmatParams& params) {
  if (params.scale < 0 || params.scale > 30) {
    return absl::InvalidArgumentError(
        absl::StrCat("rmat scale must be in [0, 30], got ", params.scale));
  }
  for (double p : {params.a, params.b, params.c, params.d}) {
    if (!(p >= 0.0)) {
      return absl::InvalidArgumentError(
          "rmat quadrant probabilities must be non-negative");
    }
  }
  const double sum = params.a + params.b + params.c + params.d;
  if (std::abs(sum - 1.0) > 1e-9) {
    return absl::InvalidArgumentError(
        absl::StrCat("rmat quadrant probabilities sum to ", sum, ", not 1"));
  }
  return absl::OkStatus();
}

absl::StatusOr<WeightedGraph> GenerateRmat(const RmatParams& params,
                                           RmatStats* stats) {
  if (auto status = ValidateRmatParams(params); !status.ok()) return status;
  const int scale = params.scale;
  const std::uint64_t total = params.num_samples;
  const std::uint64_t num_blocks = (total + kBlock - 1) / kBlock;
  const double ab = params.a + params.b;
  const double abc = ab + params.c;

  // Canonical (min, max) pairs packed into one word; self-loops become ~0.
  constexpr std::uint64_t kDropped = ~std::uint64_t{0};
  std::vector<std::uint64_t> pairs(total);
  std::vector<std::uint64_t> first_a(num_blocks, 0);
  ParallelFor(
      0, num_blocks,
      [&](std::size_t block) {
        std::mt19937_64 rng(MixSeed(params.seed, block));
        std::uniform_real_distribution<double> uniform(0.0, 1.0);
        const std::uint64_t lo = block * kBlock;
        const std::uint64_t hi = std::min(total, lo + kBlock);
        std::uint64_t count_a = 0;
        for (std::uint64_t i = lo; i < hi; ++i) {
          std::uint64_t u = 0;
          std::uint64_t v = 0;
          for (int level = 0; level < scale; ++level) {
            const double r = uniform(rng);
            int row = 0;
            int col = 0;
            if (r < params.a) {
              if (level == 0) ++count_a;
            } else if (r < ab) {
              col = 1;
            } else if (r < abc) {
              row = 1;
            } else {
              row = col = 1;
            }
            u = (u << 1) | row;
            v = (v << 1) | col;
          }
          pairs[i] = u == v ? kDropped : (std::min(u, v) << 32) | std::max(u, v);
        }
        first_a[block] = count_a;
      },
      1);

  std::sort(pairs.begin(), pairs.end());
  const std::uint64_t self_loops =
      static_cast<std::uint64_t>(pairs.end() - std::lower_bound(pairs.begin(),
                                                                pairs.end(),
                                                                kDropped));
  pairs.resize(pairs.size() - self_loops);
  const std::size_t sampled = pairs.size();
  pairs.erase(std::unique(pairs.begin(), pairs.end()), pairs.end());
  pairs.shrink_to_fit();

  if (stats != nullptr) {
    stats->samples = total;
    stats->first_level_a = 0;
    for (std::uint64_t c : first_a) stats->first_level_a += c;
    stats->self_loops = self_loops;
    stats->duplicates = sampled - pairs.size();
  }

  std::vector<Edge> edges(pairs.size());
  ParallelFor(0, pairs.size(), [&](std::size_t i) {
    edges[i] = {static_cast<NodeId>(pairs[i] >> 32),
                static_cast<NodeId>(pairs[i] & 0xffffffffu), 1.0};
  }, 4096);
  std::vector<std::uint64_t>().swap(pairs);
  return BuildGraph(edges, std::size_t{1} << scale);
}

}  // namespace lambdacc
