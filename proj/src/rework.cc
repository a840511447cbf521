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

#include "hashtree/rework.h"

#include <string>

#include "hashtree/error.h"

namespace hashtree {

std::uint32_t largest_feasible_base(std::span<const Arity> arities,
                                    std::uint32_t i, std::uint64_t leaves) {
  if (i < 1 || i > arities.size()) {
    throw PreconditionError("level " + std::to_string(i) + " out of range");
  }
  if (leaves < 2) {
    throw PreconditionError("single-leaf subtrees are collapsed, not rebuilt");
  }
  if (level_capacity(arities, 1, i) < leaves) {
    throw InfeasibleError(std::to_string(leaves) +
                          " blocks exceed the capacity of levels 1.." +
                          std::to_string(i));
  }
  std::uint32_t j = i;
  uint128 product = arities[i - 1];
  while (product < leaves) {
    --j;
    product *= arities[j - 1];
  }
  return j;
}

Topology rebuild_subtree(std::span<const Arity> arities, std::uint32_t j,
                         std::uint32_t i, std::uint64_t leaves) {
  if (j < 1 || j > i || i > arities.size()) {
    throw PreconditionError("invalid level range " + std::to_string(j) + ".." +
                            std::to_string(i));
  }
  return build_same_depth(leaves, arities.subspan(j - 1, i - j + 1));
}

std::vector<RightmostProfile> ReworkedTopology::trace() const {
  std::vector<RightmostProfile> out;
  out.reserve(steps.size());
  for (const ReworkStep& s : steps) out.push_back(s.profile);
  return out;
}

ReworkedTopology rework(std::uint64_t l, std::span<const Arity> arities) {
  if (l < 2) throw DegenerateInputError("rework needs at least 2 blocks");
  if (arities.empty()) throw InvalidPlanError("empty arity list");
  const auto h = static_cast<std::uint32_t>(arities.size());
  Spine spine = same_depth_spine(arities, 1, h, l);

  ReworkedTopology out;
  // spine[k] is N_{h-k} while the path is still contiguous in levels; after
  // a rebuild the entries keep their global level numbers.
  for (std::size_t k = 1; k < spine.size(); ++k) {
    const SpineNode node = spine[k];
    if (node.leaves == 1) {
      spine.resize(k);
      out.steps.push_back(ReworkStep{ReworkStep::Kind::kCollapse, node.level,
                                     0, 1, false, profile_of(spine)});
      break;
    }
    if (node.arity == arities[node.level - 1]) continue;

    const std::uint32_t j =
        largest_feasible_base(arities, node.level, node.leaves);
    if (j == node.base) continue;  // rebuild would reproduce the subtree

    Spine rebuilt = same_depth_spine(arities, j, node.level, node.leaves);
    spine.resize(k);
    spine.insert(spine.end(), rebuilt.begin(), rebuilt.end());
    out.steps.push_back(ReworkStep{ReworkStep::Kind::kRebuild, node.level, j,
                                   node.leaves, rebuilt.front().arity == 1,
                                   profile_of(spine)});
  }

  out.tree = materialize(arities, spine);
  out.h_prime = static_cast<std::uint32_t>(spine.size());
  out.spine = std::move(spine);
  return out;
}

ReworkedTopology rework(const ArityPlan& plan) {
  return rework(plan.l, plan.arities);
}

}  // namespace hashtree
