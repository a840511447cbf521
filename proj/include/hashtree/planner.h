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

#ifndef HASHTREE_PLANNER_H_
#define HASHTREE_PLANNER_H_

// Selection of the minimal running-time arity multiset for a same-depth
// hash tree over l message blocks.
//
// Level indices are 1-based throughout the library: level 1 is the base
// level (parents of message blocks), level h the root. Arity sequences are
// stored base first, so arities[m - 1] is the arity of level m.

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace hashtree {

__extension__ typedef unsigned __int128 uint128;

using Arity = std::uint32_t;

// Number of blocks l; the planner accepts up to 2^63 - 1.
inline constexpr std::uint64_t kMaxMessageLength = (std::uint64_t{1} << 63) - 1;

struct CaseSelection {
  int case_id = 0;       // 1..11
  int index = 0;         // least i with 3^i >= l
  int h5 = 0;
  int h4 = 0;
  int h3 = 0;
  int h2 = 0;

  int total_levels() const { return h5 + h4 + h3 + h2; }
  bool operator==(const CaseSelection&) const = default;
};

struct ArityPlan {
  std::uint64_t l = 0;
  // Base level first; non-increasing. Empty only for l == 1.
  std::vector<Arity> arities;
  // Absent only for l == 1, which needs no internal node.
  std::optional<CaseSelection> selection;

  std::size_t height() const { return arities.size(); }
  std::uint64_t running_time() const;
  bool operator==(const ArityPlan&) const = default;
};

// Least i >= 1 with 3^i >= l. Throws DegenerateInputError for l < 2.
int minimal_index(std::uint64_t l);

// Evaluates the eleven interval conditions with exact integer arithmetic.
// Throws DegenerateInputError for l < 2 and InternalInconsistencyError if
// zero or several cases fire.
CaseSelection select_case(std::uint64_t l);

// Ids of every case whose condition holds for l. Exactly one for a correct
// table; exposed for the uniqueness sweep.
std::vector<int> matching_cases(std::uint64_t l);

// Expands select_case into h5 fives, h4 fours, h3 threes, then h2 twos.
ArityPlan plan_arities(std::uint64_t l);

// Like plan_arities, but also accepts l == 1 (empty plan, no selection).
ArityPlan plan_message(std::uint64_t l);

// product >= l and product / a_j < l for every j.
bool validate_constraints(std::span<const Arity> arities, std::uint64_t l);

// Product of arities[lo-1 .. hi-1] (1-based, inclusive); 1 when lo > hi.
// Saturates at 2^127.
uint128 level_capacity(std::span<const Arity> arities, std::size_t lo,
                       std::size_t hi);

std::string to_string(const std::vector<Arity>& arities);

}  // namespace hashtree

#endif  // HASHTREE_PLANNER_H_
