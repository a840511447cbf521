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

#ifndef HASHTREE_HINTS_H_
#define HASHTREE_HINTS_H_

// Threshold tests that decide from rightmost arities alone whether a
// rightmost subtree can be rebuilt at a smaller height.

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "hashtree/planner.h"

namespace hashtree {

// Arities of N_i and its rightmost descendants, higher level first.
using AritySequence = std::vector<Arity>;

enum class OrderMode {
  // Compare the first |q| entries lexicographically; equality counts as
  // preceding. Agrees with every reference comparison example.
  kLexicographic,
  // The condition list read literally: strictly smaller head, or equal up to
  // some k and strictly smaller at every later position, or all equal.
  // Rejects (3,1,1,9) <= (3,1,2,4).
  kLiteral,
};

// r precedes-or-equals q. Throws PreconditionError if |q| > |r| or q is
// empty.
bool seq_precedes(std::span<const Arity> r, std::span<const Arity> q,
                  OrderMode mode = OrderMode::kLexicographic);

struct ThresholdRule {
  int case_id = 0;
  std::uint32_t min_i = 0;
  // nullopt: no feasible rightmost state at this level is updatable.
  std::optional<AritySequence> threshold;
  // Computed by enumeration rather than taken from the fixed constants.
  bool derived = false;
};

// Fixed constants: case 1 -> (1); case 2 -> (1,3,1) for i >= 3, (1,3)
// for i = 2; case 3 -> (1,3,1,3,1,3,1,3,1,3,1,2) for i >= 12. Everything
// else throws UnsupportedConstantError.
ThresholdRule threshold_for(int case_id, std::uint32_t i);

bool updatable(const ThresholdRule& rule, std::span<const Arity> profile,
               OrderMode mode = OrderMode::kLexicographic);

// Rightmost profile (N_i down to N_1) of a same-depth subtree over `leaves`
// blocks using a_1..a_i, computed arithmetically.
AritySequence subtree_profile(std::span<const Arity> arities, std::uint32_t i,
                              std::uint64_t leaves);

// Direct test: the subtree fits in a_2..a_i.
bool directly_updatable(std::span<const Arity> arities, std::uint32_t i,
                        std::uint64_t leaves);

struct ThresholdDerivation {
  ThresholdRule rule;
  std::uint64_t states = 0;            // leaf counts 2..a_1...a_i
  std::uint64_t updatable_states = 0;
  std::optional<AritySequence> max_updatable;
  std::optional<AritySequence> min_blocked;
};

// Enumerates every leaf count 2 <= l_i <= a_1...a_i of the level-i rightmost
// subtree, marks it updatable via largest_feasible_base, checks that the
// updatable set is downward closed under the lexicographic order and returns
// the shortest prefix of the maximal updatable profile that separates the
// two sets. Throws OrderInconsistencyError when closure fails and
// ScaleError above kMaxDerivationStates.
inline constexpr std::uint64_t kMaxDerivationStates = std::uint64_t{1} << 26;

ThresholdDerivation derive_threshold(std::span<const Arity> arities,
                                     std::uint32_t i, int case_id = 0);
ThresholdDerivation derive_threshold(const ArityPlan& plan, std::uint32_t i);

}  // namespace hashtree

#endif  // HASHTREE_HINTS_H_
