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

#ifndef HASHTREE_REWORK_H_
#define HASHTREE_REWORK_H_

// Rightmost-path rework of a same-depth tree. Starting below the root, each
// rightmost node N_i is visited in turn: a single-leaf subtree is collapsed
// to that leaf (and the walk stops), a full node is skipped, and any other
// subtree is rebuilt as a same-depth tree over a_j..a_i for the largest j
// whose capacity still covers its leaves.

#include <cstdint>
#include <span>
#include <vector>

#include "hashtree/planner.h"
#include "hashtree/topology.h"

namespace hashtree {

// Largest j with a_j * ... * a_i >= leaves. Level indices are 1-based.
// Throws PreconditionError when leaves < 2 or i is out of range, and
// InfeasibleError when leaves exceeds a_1 * ... * a_i.
std::uint32_t largest_feasible_base(std::span<const Arity> arities,
                                    std::uint32_t i, std::uint64_t leaves);

// Same-depth subtree over `leaves` blocks using a_j (base) .. a_i (root).
Topology rebuild_subtree(std::span<const Arity> arities, std::uint32_t j,
                         std::uint32_t i, std::uint64_t leaves);

struct ReworkStep {
  enum class Kind { kRebuild, kCollapse };

  Kind kind = Kind::kRebuild;
  std::uint32_t level = 0;   // i
  std::uint32_t base = 0;    // j for rebuilds; unused for collapses
  std::uint64_t leaves = 0;  // l_i
  // The rebuilt subtree root ended up with arity 1.
  bool unit_root = false;
  RightmostProfile profile;  // rightmost profile after the step
};

struct ReworkedTopology {
  Topology tree;
  Spine spine;
  // Edges on the root-to-rightmost-leaf path.
  std::uint32_t h_prime = 0;
  std::vector<ReworkStep> steps;

  // Profile snapshots, one per structural change.
  std::vector<RightmostProfile> trace() const;
  bool changed() const { return !steps.empty(); }
};

// Runs the rework on the same-depth tree for (l, arities). Requires l >= 2
// and arities that describe a same-depth tree over l blocks.
ReworkedTopology rework(std::uint64_t l, std::span<const Arity> arities);
ReworkedTopology rework(const ArityPlan& plan);

}  // namespace hashtree

#endif  // HASHTREE_REWORK_H_
