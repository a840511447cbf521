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

#include "hashtree/engine.h"

#include <algorithm>
#include <atomic>
#include <bit>
#include <cstring>
#include <random>
#include <thread>

#include "hashtree/error.h"

namespace hashtree {

Digest reference_mix(std::span<const Digest> units) {
  std::uint64_t acc = kMixSeed;
  for (Digest w : units) acc = std::rotl((acc ^ w) * kMixMultiplier, 29);
  return acc;
}

CompressionPrimitive default_primitive() { return &reference_mix; }

std::vector<Block> blocks_from_bytes(std::span<const std::byte> bytes) {
  std::vector<Block> blocks((bytes.size() + 7) / 8);
  if (blocks.empty()) blocks.push_back(0);
  for (std::size_t k = 0; k < bytes.size(); ++k) {
    blocks[k / 8] |= static_cast<Block>(std::to_integer<unsigned>(bytes[k]))
                     << (8 * (k % 8));
  }
  return blocks;
}

std::string to_hex(Digest d) {
  static constexpr char kDigits[] = "0123456789abcdef";
  std::string s(16, '0');
  for (int k = 15; k >= 0; --k, d >>= 4) s[k] = kDigits[d & 0xF];
  return s;
}

ScheduleProfile schedule(const Topology& t) {
  ScheduleProfile p;
  p.timing.assign(t.node_count(), {});
  for (NodeId id = 0; id < t.node_count(); ++id) {
    const Node& n = t.node(id);
    if (n.is_leaf()) continue;
    std::uint64_t start = 0;
    for (NodeId c : t.children(id)) start = std::max(start, p.timing[c].finish);
    p.timing[id] = {start, start + n.arity};
    p.total_units += n.arity;
  }
  p.makespan = p.timing[t.root()].finish;

  // Difference array over time steps 1..makespan.
  std::vector<std::int64_t> delta(p.makespan + 2, 0);
  for (NodeId id = 0; id < t.node_count(); ++id) {
    if (t.node(id).is_leaf()) continue;
    ++delta[p.timing[id].start + 1];
    --delta[p.timing[id].finish + 1];
  }
  p.active.resize(p.makespan);
  std::int64_t running = 0;
  for (std::uint64_t step = 1; step <= p.makespan; ++step) {
    running += delta[step];
    p.active[step - 1] = static_cast<std::uint64_t>(running);
    p.max_processors = std::max(p.max_processors, p.active[step - 1]);
  }
  return p;
}

Metrics measure(const Topology& t) {
  Metrics m;
  m.running_time = running_time(t);
  m.work = work(t);
  m.internal_nodes = internal_node_count(t);
  m.level_counts = level_counts(t);
  m.max_processors = schedule(t).max_processors;
  return m;
}

namespace {

class Evaluator {
 public:
  Evaluator(const Topology& t, std::span<const Block> blocks,
            const CompressionPrimitive& prim)
      : t_(t), prim_(prim), values_(t.node_count(), 0) {
    for (NodeId id = 0; id < t.node_count(); ++id) {
      const Node& n = t.node(id);
      if (n.is_leaf()) values_[id] = blocks[n.first];
    }
  }

  void eval(NodeId id, std::vector<Digest>& scratch) {
    scratch.clear();
    for (NodeId c : t_.children(id)) scratch.push_back(values_[c]);
    values_[id] = prim_(scratch);
    units_.fetch_add(scratch.size(), std::memory_order_relaxed);
    invocations_.fetch_add(1, std::memory_order_relaxed);
  }

  void post_order() {
    std::vector<Digest> scratch;
    for (NodeId id = 0; id < t_.node_count(); ++id) {
      if (!t_.node(id).is_leaf()) eval(id, scratch);
    }
  }

  // Kahn's algorithm, picking a uniformly random ready node each step.
  void shuffled(std::uint64_t seed) {
    std::vector<NodeId> parent(t_.node_count(), 0);
    std::vector<Arity> pending(t_.node_count(), 0);
    std::vector<NodeId> ready;
    for (NodeId id = 0; id < t_.node_count(); ++id) {
      const Node& n = t_.node(id);
      pending[id] = n.arity;
      for (NodeId c : t_.children(id)) parent[c] = id;
    }
    for (NodeId id = 0; id < t_.node_count(); ++id) {
      if (t_.node(id).is_leaf()) continue;
      bool leaves_only = true;
      for (NodeId c : t_.children(id)) leaves_only &= t_.node(c).is_leaf();
      if (leaves_only) ready.push_back(id);
    }
    // Leaves are complete from the start.
    for (NodeId id = 0; id < t_.node_count(); ++id) {
      if (t_.node(id).is_leaf() && id != t_.root()) --pending[parent[id]];
    }
    std::mt19937_64 rng(seed);
    std::vector<Digest> scratch;
    while (!ready.empty()) {
      std::uniform_int_distribution<std::size_t> pick(0, ready.size() - 1);
      const std::size_t k = pick(rng);
      const NodeId id = ready[k];
      ready[k] = ready.back();
      ready.pop_back();
      eval(id, scratch);
      if (id != t_.root() && --pending[parent[id]] == 0) {
        ready.push_back(parent[id]);
      }
    }
  }

  void parallel(unsigned threads) {
    if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
    std::vector<std::uint32_t> height(t_.node_count(), 0);
    std::vector<std::vector<NodeId>> waves;
    for (NodeId id = 0; id < t_.node_count(); ++id) {
      if (t_.node(id).is_leaf()) continue;
      std::uint32_t h = 0;
      for (NodeId c : t_.children(id)) h = std::max(h, height[c]);
      height[id] = h + 1;
      if (waves.size() < height[id]) waves.resize(height[id]);
      waves[height[id] - 1].push_back(id);
    }
    for (const std::vector<NodeId>& wave : waves) {
      const std::size_t workers = std::min<std::size_t>(threads, wave.size());
      if (workers <= 1) {
        std::vector<Digest> scratch;
        for (NodeId id : wave) eval(id, scratch);
        continue;
      }
      std::vector<std::jthread> pool;
      pool.reserve(workers);
      for (std::size_t w = 0; w < workers; ++w) {
        pool.emplace_back([this, &wave, w, workers] {
          std::vector<Digest> scratch;
          for (std::size_t k = w; k < wave.size(); k += workers) {
            eval(wave[k], scratch);
          }
        });
      }
    }
  }

  Digest root_value() const { return values_[t_.root()]; }
  std::uint64_t units() const { return units_.load(); }
  std::uint64_t invocations() const { return invocations_.load(); }

 private:
  const Topology& t_;
  const CompressionPrimitive& prim_;
  std::vector<Digest> values_;
  std::atomic<std::uint64_t> units_{0};
  std::atomic<std::uint64_t> invocations_{0};
};

}  // namespace

HashResult hash_tree(std::span<const Block> blocks, const Topology& t,
                     const CompressionPrimitive& prim,
                     const EvalOptions& options) {
  if (blocks.size() != t.leaf_count()) {
    throw InputError("topology expects " + std::to_string(t.leaf_count()) +
                     " blocks, got " + std::to_string(blocks.size()));
  }
  HashResult r;
  r.profile = schedule(t);
  if (t.node(t.root()).is_leaf()) {
    const Digest block = blocks.front();
    r.digest = prim(std::span<const Digest>(&block, 1));
    return r;
  }

  Evaluator ev(t, blocks, prim);
  switch (options.order) {
    case EvalOrder::kPostOrder:
      ev.post_order();
      break;
    case EvalOrder::kShuffled:
      ev.shuffled(options.seed);
      break;
    case EvalOrder::kParallel:
      ev.parallel(options.threads);
      break;
  }
  r.digest = ev.root_value();
  r.units = ev.units();
  r.invocations = ev.invocations();
  return r;
}

}  // namespace hashtree
