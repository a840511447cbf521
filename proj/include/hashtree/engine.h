// Copyright 2026 The Hashtree Authors. All Rights Reserved.
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

#ifndef HASHTREE_ENGINE_H_
#define HASHTREE_ENGINE_H_

// Tree hashing over a Topology with a rate-1 compression primitive, and the
// analytic ASAP schedule used for the processor metrics.

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "hashtree/topology.h"

namespace hashtree {

// 8-byte message block, little-endian.
using Block = std::uint64_t;
using Digest = std::uint64_t;

// Maps an ordered sequence of 8-byte units to one 8-byte digest. Cost is the
// number of input units. Must be pure and reentrant.
using CompressionPrimitive = std::function<Digest(std::span<const Digest>)>;

inline constexpr std::uint64_t kMixSeed = 0x243F6A8885A308D3ULL;
inline constexpr std::uint64_t kMixMultiplier = 0x9E3779B97F4A7C15ULL;

// acc = seed; per unit w: acc = rotl((acc ^ w) * multiplier, 29).
Digest reference_mix(std::span<const Digest> units);
CompressionPrimitive default_primitive();

// Splits raw bytes into little-endian 8-byte blocks, zero-padding the last.
// An empty input yields one zero block.
std::vector<Block> blocks_from_bytes(std::span<const std::byte> bytes);

std::string to_hex(Digest d);

struct NodeTiming {
  std::uint64_t start = 0;
  std::uint64_t finish = 0;
};

struct ScheduleProfile {
  std::vector<NodeTiming> timing;  // indexed by NodeId
  // active[t - 1]: internal nodes with start < t <= finish, t = 1..makespan.
  std::vector<std::uint64_t> active;
  std::uint64_t makespan = 0;
  std::uint64_t total_units = 0;
  std::uint64_t max_processors = 0;
};

// ASAP with unbounded processors: start = max child finish, finish = start +
// arity, leaves finish at 0.
ScheduleProfile schedule(const Topology& t);

struct Metrics {
  std::uint64_t running_time = 0;
  std::uint64_t work = 0;
  std::uint64_t internal_nodes = 0;
  std::vector<std::uint64_t> level_counts;
  std::uint64_t max_processors = 0;
};

Metrics measure(const Topology& t);

enum class EvalOrder {
  kPostOrder,   // stored node order
  kShuffled,    // random topological order drawn from `seed`
  kParallel,    // height waves split across `threads` workers
};

struct EvalOptions {
  EvalOrder order = EvalOrder::kPostOrder;
  std::uint64_t seed = 0;
  unsigned threads = 0;  // 0: hardware concurrency
};

struct HashResult {
  Digest digest = 0;
  ScheduleProfile profile;
  // Counted while evaluating, independently of the schedule.
  std::uint64_t units = 0;
  std::uint64_t invocations = 0;
};

// Evaluates every internal node from its children. A single-leaf topology
// has root value primitive(block); that finalisation is not counted as work.
// Throws InputError when blocks.size() != t.leaf_count().
HashResult hash_tree(std::span<const Block> blocks, const Topology& t,
                     const CompressionPrimitive& prim,
                     const EvalOptions& options = {});

}  // namespace hashtree

#endif  // HASHTREE_ENGINE_H_
