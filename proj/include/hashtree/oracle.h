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

#ifndef HASHTREE_ORACLE_H_
#define HASHTREE_ORACLE_H_

// Brute-force ground truth for the planner and the rework, and the sweep
// that compares them over a range of message lengths.

#include <chrono>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "hashtree/planner.h"

namespace hashtree {

struct SearchResult {
  std::uint64_t l = 0;
  std::uint64_t min_time = 0;
  // Each multiset non-increasing; list sorted descending lexicographically.
  std::vector<std::vector<Arity>> optimal_multisets;
  std::chrono::nanoseconds elapsed{0};
};

// Best-first over the arity sum: for s = 2, 3, ... enumerates every multiset
// of arities in 2..max_arity summing to s and keeps those with product >= l
// and product / a < l for each member. Stops at the first s with a hit.
SearchResult brute_force_min_time(std::uint64_t l, Arity max_arity = 9);

// Multiset among `optimal` with the most 5s, then 4s, then 3s.
std::vector<Arity> preferred_multiset(
    const std::vector<std::vector<Arity>>& optimal);

inline constexpr std::uint64_t kMaxExhaustiveLeaves = 64;

// Minimal edge count over all rooted ordered trees with l leaves whose span
// (arity + max child span, leaves 0) is at most time_budget. Unary nodes are
// allowed. Returns nullopt if no tree meets the budget. Throws ScaleError
// when l > max_leaves.
std::optional<std::uint64_t> min_work_tree(
    std::uint64_t l, std::uint64_t time_budget,
    std::uint64_t max_leaves = kMaxExhaustiveLeaves);

struct ReportRecord {
  std::uint64_t l = 0;
  std::string check;
  bool ok = true;
  std::string detail;
};

struct SweepOptions {
  Arity max_arity = 9;
  unsigned threads = 0;  // 0: hardware concurrency
  bool planner_checks = true;
  bool rework_checks = true;
  bool hint_checks = true;
};

struct SweepReport {
  std::vector<ReportRecord> records;  // sorted by l, then check order

  std::size_t violations() const;
  // One JSON object per line: {"l","check","status","detail"}.
  std::string to_jsonl() const;
};

// Check names, in emission order per l:
//   plan_constraints, plan_optimal, plan_tiebreak, rework_leaves,
//   rework_time, rework_work, rework_processors, rework_h_prime,
//   rework_full_skip, rework_unit_root (ok records carrying a "finding:"
//   detail, only when one occurs), hint_fixed (cases 1-3 where a
//   fixed constant exists), hint_derived.
SweepReport sweep_verify(std::uint64_t l_min, std::uint64_t l_max,
                         const SweepOptions& options = {});

}  // namespace hashtree

#endif  // HASHTREE_ORACLE_H_
