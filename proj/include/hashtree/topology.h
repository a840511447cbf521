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

#ifndef HASHTREE_TOPOLOGY_H_
#define HASHTREE_TOPOLOGY_H_

#include <cstdint>
#include <span>
#include <vector>

#include "hashtree/planner.h"

namespace hashtree {

using NodeId = std::uint32_t;

struct Node {
  // Leaves: block index. Internal nodes: offset of the first child id.
  std::uint64_t first = 0;
  // 0 for leaves.
  Arity arity = 0;

  bool is_leaf() const { return arity == 0; }
  bool operator==(const Node&) const = default;
};

// Immutable rooted tree over l leaves. Nodes are stored in post-order
// (children left to right, before their parent), so the root is the last
// node and two structurally equal trees compare equal node for node.
class Topology {
 public:
  std::uint64_t leaf_count() const { return leaves_; }
  std::size_t node_count() const { return nodes_.size(); }
  NodeId root() const { return static_cast<NodeId>(nodes_.size() - 1); }

  const Node& node(NodeId id) const { return nodes_[id]; }
  std::span<const Node> nodes() const { return nodes_; }
  std::span<const NodeId> children(NodeId id) const;

  bool operator==(const Topology&) const = default;

 private:
  friend class TopologyBuilder;

  std::uint64_t leaves_ = 0;
  std::vector<Node> nodes_;
  std::vector<NodeId> child_ids_;
};

// Collects nodes in any order and produces a canonical Topology.
// Leaves must be added in block order; build() checks that they end up
// consecutive left to right and that every node has exactly one parent.
class TopologyBuilder {
 public:
  NodeId add_leaf();
  NodeId add_internal(std::span<const NodeId> children);
  Topology build(NodeId root) &&;

 private:
  std::uint64_t next_block_ = 0;
  std::vector<Node> nodes_;
  std::vector<NodeId> child_ids_;
};

// Same-depth tree: level m holds ceil(l / (a_1...a_m)) nodes filled left to
// right, so only the rightmost node of a level may be deficient.
// Throws InvalidPlanError if the arities cannot cover l.
Topology build_same_depth(std::uint64_t l, std::span<const Arity> arities);
Topology build_same_depth(const ArityPlan& plan);

// Span of the dependency DAG: 0 for a leaf, arity + max child time otherwise.
std::uint64_t running_time(const Topology& t);

// Total primitive cost: the sum of internal arities, i.e. node count - 1.
std::uint64_t work(const Topology& t);

std::uint64_t internal_node_count(const Topology& t);

// Internal node counts grouped by height (1 + max child height), lowest
// first. On same-depth trees this is the per-level node count.
std::vector<std::uint64_t> level_counts(const Topology& t);

// Root first; one entry per internal node on the rightmost path.
using RightmostProfile = std::vector<Arity>;

RightmostProfile rightmost_profile(const Topology& t);

// Arithmetic model of the rightmost path. Each entry is an internal node at
// `level` whose subtree is built from arities a_base..a_level over `leaves`
// blocks: its first arity-1 children are perfect subtrees of a_base..a_{level-1}
// and its last child is the next entry (or a leaf when the spine ends).
struct SpineNode {
  std::uint32_t level = 0;
  std::uint32_t base = 0;
  Arity arity = 0;
  std::uint64_t leaves = 0;

  bool operator==(const SpineNode&) const = default;
};

using Spine = std::vector<SpineNode>;

// Rightmost path of a same-depth tree over `leaves` blocks using levels
// base..top of `arities`.
Spine same_depth_spine(std::span<const Arity> arities, std::uint32_t base,
                       std::uint32_t top, std::uint64_t leaves);

RightmostProfile profile_of(const Spine& spine);

// Expands a spine into the explicit tree it describes.
Topology materialize(std::span<const Arity> arities, const Spine& spine);

}  // namespace hashtree

#endif  // HASHTREE_TOPOLOGY_H_
