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

#ifndef LAMBDACC_PARALLEL_H_
#define LAMBDACC_PARALLEL_H_

#include <omp.h>

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <vector>

namespace lambdacc {

// Number of worker threads used by parallel regions started from the calling
// thread.
inline int NumWorkers() { return omp_get_max_threads(); }

// Index of the calling thread within the current parallel region; 0 outside.
inline int WorkerId() { return omp_get_thread_num(); }

// Sets the worker count for parallel regions started from the calling thread
// and restores the previous value on destruction.
class ScopedParallelism {
 public:
  explicit ScopedParallelism(int threads) : previous_(omp_get_max_threads()) {
    omp_set_num_threads(std::max(1, threads));
  }
  ~ScopedParallelism() { omp_set_num_threads(previous_); }

  ScopedParallelism(const ScopedParallelism&) = delete;
  ScopedParallelism& operator=(const ScopedParallelism&) = delete;

 private:
  int previous_;
};

// Dynamic-schedule parallel loop over [begin, end). `f` is called once per
// index. Chunks are handed out on demand so skewed per-index cost balances.
template <typename F>
void ParallelFor(std::size_t begin, std::size_t end, F&& f,
                 std::size_t grain = 256) {
  if (end <= begin) return;
  const auto count = static_cast<std::int64_t>(end - begin);
  if (count <= static_cast<std::int64_t>(grain) || NumWorkers() == 1) {
    for (std::size_t i = begin; i < end; ++i) f(i);
    return;
  }
  const auto chunk = static_cast<int>(grain);
#pragma omp parallel for schedule(dynamic, chunk)
  for (std::int64_t i = 0; i < count; ++i) {
    f(begin + static_cast<std::size_t>(i));
  }
}

// Sum of f(i) over [0, n). Partial sums are taken over fixed-size blocks and
// combined in block order, so the result is bit-identical for any thread
// count.
template <typename F>
double BlockedSum(std::size_t n, F&& f) {
  constexpr std::size_t kBlock = 4096;
  const std::size_t num_blocks = (n + kBlock - 1) / kBlock;
  std::vector<double> partial(num_blocks, 0.0);
  ParallelFor(
      0, num_blocks,
      [&](std::size_t b) {
        const std::size_t lo = b * kBlock;
        const std::size_t hi = std::min(n, lo + kBlock);
        double sum = 0;
        for (std::size_t i = lo; i < hi; ++i) sum += f(i);
        partial[b] = sum;
      },
      1);
  double total = 0;
  for (double p : partial) total += p;
  return total;
}

// Exclusive prefix sum in place; returns the total.
template <typename T>
T ExclusiveScan(std::vector<T>& values) {
  T running = 0;
  for (auto& v : values) {
    T next = running + v;
    v = running;
    running = next;
  }
  return running;
}

// splitmix64 finalizer; used to derive independent seeds from one master seed.
inline std::uint64_t MixSeed(std::uint64_t seed, std::uint64_t stream) {
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (stream + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

}  // namespace lambdacc

#endif  // LAMBDACC_PARALLEL_H_
