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

#include "hashtree/topology.h"

#include <algorithm>
#include <string>

#include "hashtree/error.h"

namespace hashtree {

std::span<const NodeId> Topology::children(NodeId id) const {
  const Node& n = nodes_[id];
  if (n.is_leaf()) return {};
  return std::span<const NodeId>(child_ids_).subspan(n.first, n.arity);
}

NodeId TopologyBuilder::add_leaf() {
  nodes_.push_back(Node{next_block_++, 0});
  return static_cast<NodeId>(nodes_.size() - 1);
}

NodeId TopologyBuilder::add_internal(std::span<const NodeId> children) {
  if (children.empty()) {
    throw PreconditionError("internal node needs at least one child");
  }
  nodes_.push_back(
      Node{child_ids_.size(), static_cast<Arity>(children.size())});
  child_ids_.insert(child_ids_.end(), children.begin(), children.end());
  return static_cast<NodeId>(nodes_.size() - 1);
}

Topology TopologyBuilder::build(NodeId root) && {
  if (root >= nodes_.size()) throw PreconditionError("root id out of range");

  Topology t;
  t.nodes_.reserve(nodes_.size());
  t.child_ids_.reserve(child_ids_.size());
  std::vector<NodeId> new_id(nodes_.size(), 0);
  std::vector<bool> seen(nodes_.size(), false);

  // Iterative post-order: (node, next child position).
  std::vector<std::pair<NodeId, Arity>> stack;
  stack.emplace_back(root, 0);
  seen[root] = true;
  while (!stack.empty()) {
    auto& [id, pos] = stack.back();
    const Node& n = nodes_[id];
    if (pos < n.arity) {
      const NodeId child = child_ids_[n.first + pos];
      ++pos;
      if (seen[child]) throw PreconditionError("node has several parents");
      seen[child] = true;
      stack.emplace_back(child, 0);
      continue;
    }
    const NodeId old = id;
    stack.pop_back();
    const NodeId fresh = static_cast<NodeId>(t.nodes_.size());
    new_id[old] = fresh;
    if (n.is_leaf()) {
      if (n.first != t.leaves_) {
        throw PreconditionError("leaves are not in block order");
      }
      t.nodes_.push_back(Node{t.leaves_++, 0});
    } else {
      t.nodes_.push_back(Node{t.child_ids_.size(), n.arity});
      for (Arity k = 0; k < n.arity; ++k) {
        t.child_ids_.push_back(new_id[child_ids_[n.first + k]]);
      }
    }
  }
  if (t.nodes_.size() != nodes_.size()) {
    throw PreconditionError("builder holds nodes unreachable from the root");
  }
  return t;
}

Topology build_same_depth(std::uint64_t l, std::span<const Arity> arities) {
  if (l == 0) throw InvalidPlanError("a tree needs at least one leaf");
  if (arities.empty() && l >= 2) {
    throw InvalidPlanError("empty arity list for " + std::to_string(l) +
                           " blocks");
  }
  for (Arity a : arities) {
    if (a == 0) throw InvalidPlanError("arity 0 in plan");
  }
  if (level_capacity(arities, 1, arities.size()) < l) {
    throw InvalidPlanError("arities cannot cover " + std::to_string(l) +
                           " blocks");
  }

  TopologyBuilder b;
  std::vector<NodeId> below;
  below.reserve(l);
  for (std::uint64_t k = 0; k < l; ++k) below.push_back(b.add_leaf());

  for (Arity a : arities) {
    std::vector<NodeId> level;
    level.reserve((below.size() + a - 1) / a);
    for (std::size_t first = 0; first < below.size(); first += a) {
      const std::size_t last = std::min(below.size(), first + a);
      level.push_back(b.add_internal(
          std::span<const NodeId>(below).subspan(first, last - first)));
    }
    below = std::move(level);
  }
  if (below.size() != 1) {
    throw InvalidPlanError("top level has " + std::to_string(below.size()) +
                           " nodes");
  }
  return std::move(b).build(below.front());
}

Topology build_same_depth(const ArityPlan& plan) {
  return build_same_depth(plan.l, plan.arities);
}

std::uint64_t running_time(const Topology& t) {
  std::vector<std::uint64_t> time(t.node_count(), 0);
  for (NodeId id = 0; id < t.node_count(); ++id) {
    const Node& n = t.node(id);
    if (n.is_leaf()) continue;
    std::uint64_t longest = 0;
    for (NodeId c : t.children(id)) longest = std::max(longest, time[c]);
    time[id] = n.arity + longest;
  }
  return time[t.root()];
}

std::uint64_t work(const Topology& t) {
  std::uint64_t sum = 0;
  for (const Node& n : t.nodes()) sum += n.arity;
  return sum;
}

std::uint64_t internal_node_count(const Topology& t) {
  return t.node_count() - t.leaf_count();
}

std::vector<std::uint64_t> level_counts(const Topology& t) {
  std::vector<std::uint32_t> height(t.node_count(), 0);
  std::vector<std::uint64_t> counts;
  for (NodeId id = 0; id < t.node_count(); ++id) {
    if (t.node(id).is_leaf()) continue;
    std::uint32_t h = 0;
    for (NodeId c : t.children(id)) h = std::max(h, height[c]);
    height[id] = h + 1;
    if (counts.size() < height[id]) counts.resize(height[id], 0);
    ++counts[height[id] - 1];
  }
  return counts;
}

RightmostProfile rightmost_profile(const Topology& t) {
  RightmostProfile p;
  NodeId id = t.root();
  while (!t.node(id).is_leaf()) {
    p.push_back(t.node(id).arity);
    id = t.children(id).back();
  }
  return p;
}

Spine same_depth_spine(std::span<const Arity> arities, std::uint32_t base,
                       std::uint32_t top, std::uint64_t leaves) {
  if (base < 1 || top > arities.size() || leaves == 0) {
    throw PreconditionError("spine level range out of bounds");
  }
  if (level_capacity(arities, base, top) < leaves) {
    throw InfeasibleError(std::to_string(leaves) +
                          " blocks exceed the capacity of levels " +
                          std::to_string(base) + ".." + std::to_string(top));
  }
  Spine spine;
  std::uint64_t n = leaves;
  for (std::uint32_t m = top; m >= base; --m) {
    const uint128 below = level_capacity(arities, base, m - 1);
    const auto r = static_cast<Arity>((n + below - 1) / below);
    spine.push_back(SpineNode{m, base, r, n});
    n -= static_cast<std::uint64_t>((r - 1) * below);
  }
  return spine;
}

RightmostProfile profile_of(const Spine& spine) {
  RightmostProfile p;
  p.reserve(spine.size());
  for (const SpineNode& s : spine) p.push_back(s.arity);
  return p;
}

namespace {

class SpineEmitter {
 public:
  SpineEmitter(std::span<const Arity> arities, const Spine& spine)
      : arities_(arities), spine_(spine) {}

  Topology run() && {
    const NodeId root = spine_.empty() ? builder_.add_leaf() : emit_spine(0);
    return std::move(builder_).build(root);
  }

 private:
  // Perfect subtree with levels lo..hi; a leaf when hi < lo.
  NodeId emit_perfect(std::uint32_t lo, std::uint32_t hi) {
    if (hi < lo) return builder_.add_leaf();
    std::vector<NodeId> kids;
    kids.reserve(arities_[hi - 1]);
    for (Arity k = 0; k < arities_[hi - 1]; ++k) {
      kids.push_back(emit_perfect(lo, hi - 1));
    }
    return builder_.add_internal(kids);
  }

  NodeId emit_spine(std::size_t k) {
    const SpineNode& s = spine_[k];
    std::vector<NodeId> kids;
    kids.reserve(s.arity);
    for (Arity c = 0; c + 1 < s.arity; ++c) {
      kids.push_back(emit_perfect(s.base, s.level - 1));
    }
    kids.push_back(k + 1 < spine_.size() ? emit_spine(k + 1)
                                         : builder_.add_leaf());
    return builder_.add_internal(kids);
  }

  std::span<const Arity> arities_;
  const Spine& spine_;
  TopologyBuilder builder_;
};

}  // namespace

Topology materialize(std::span<const Arity> arities, const Spine& spine) {
  Topology t = SpineEmitter(arities, spine).run();
  if (!spine.empty() && t.leaf_count() != spine.front().leaves) {
    throw InternalInconsistencyError(
        "spine expands to " + std::to_string(t.leaf_count()) +
        " leaves, expected " + std::to_string(spine.front().leaves));
  }
  return t;
}

}  // namespace hashtree
