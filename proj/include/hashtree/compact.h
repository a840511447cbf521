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

#ifndef HASHTREE_COMPACT_H_
#define HASHTREE_COMPACT_H_

// Compact description of planner/rework trees: (l, A) is canonical and the
// stored rightmost profile is checked against the recomputed tree.
//
// JSON layout, fields in this order:
//   {"l": int, "arities": [base..root], "rightmost": [root..leaf],
//    "form": "same_depth" | "reworked"}
// Reworked documents written by the CLI carry an extra "trace" array.

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

#include "hashtree/planner.h"
#include "hashtree/rework.h"
#include "hashtree/topology.h"

namespace hashtree {

enum class TreeForm { kSameDepth, kReworked };

std::string_view form_name(TreeForm form);

struct CompactForm {
  std::uint64_t l = 0;
  std::vector<Arity> arities;
  RightmostProfile rightmost;
  TreeForm form = TreeForm::kSameDepth;

  bool operator==(const CompactForm&) const = default;
};

// Detects the form by rebuilding; prefers kSameDepth when rework is a no-op.
// Throws PreconditionError if t is neither tree of the plan.
CompactForm to_compact(const Topology& t, const ArityPlan& plan);
CompactForm to_compact(const ReworkedTopology& r, const ArityPlan& plan);

// Throws CorruptionError when the stored profile disagrees with the rebuilt
// tree and InvalidPlanError when (l, A) cannot describe a tree.
Topology from_compact(const CompactForm& c);

nlohmann::ordered_json to_json(const CompactForm& c);
nlohmann::ordered_json to_json(const CompactForm& c,
                               std::span<const RightmostProfile> trace);

// Throws InputError on malformed documents.
CompactForm compact_from_json(std::string_view text);

}  // namespace hashtree

#endif  // HASHTREE_COMPACT_H_
