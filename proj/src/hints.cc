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

#include "hashtree/hints.h"

#include <algorithm>
#include <string>

#include "hashtree/error.h"
#include "hashtree/rework.h"
#include "hashtree/topology.h"

namespace hashtree {

namespace {

bool literal_precedes(std::span<const Arity> r, std::span<const Arity> q) {
  const std::size_t n = q.size();
  if (r[0] < q[0]) return true;
  for (std::size_t k = 0; k <= n; ++k) {
    bool ok = true;
    for (std::size_t j = 0; j < n && ok; ++j) {
      ok = j < k ? r[j] == q[j] : r[j] < q[j];
    }
    if (ok) return true;
  }
  return false;
}

}  // namespace

bool seq_precedes(std::span<const Arity> r, std::span<const Arity> q,
                  OrderMode mode) {
  if (q.empty()) throw PreconditionError("threshold sequence is empty");
  if (q.size() > r.size()) {
    throw PreconditionError("threshold longer than the compared sequence");
  }
  if (mode == OrderMode::kLiteral) return literal_precedes(r, q);
  const auto head = r.first(q.size());
  return !std::lexicographical_compare(q.begin(), q.end(), head.begin(),
                                       head.end());
}

ThresholdRule threshold_for(int case_id, std::uint32_t i) {
  if (case_id < 1 || case_id > 11) {
    throw PreconditionError("case id must be in 1..11");
  }
  if (i < 1) throw PreconditionError("level must be at least 1");
  switch (case_id) {
    case 1:
      return {1, 1, AritySequence{1}, false};
    case 2:
      if (i >= 3) return {2, 3, AritySequence{1, 3, 1}, false};
      if (i == 2) return {2, 2, AritySequence{1, 3}, false};
      break;
    case 3:
      if (i >= 12) {
        return {3, 12, AritySequence{1, 3, 1, 3, 1, 3, 1, 3, 1, 3, 1, 2},
                false};
      }
      break;
    default:
      break;
  }
  throw UnsupportedConstantError("no fixed threshold for case " +
                                 std::to_string(case_id) + " at level " +
                                 std::to_string(i));
}

bool updatable(const ThresholdRule& rule, std::span<const Arity> profile,
               OrderMode mode) {
  if (!rule.threshold) return false;
  return seq_precedes(profile, *rule.threshold, mode);
}

AritySequence subtree_profile(std::span<const Arity> arities, std::uint32_t i,
                              std::uint64_t leaves) {
  return profile_of(same_depth_spine(arities, 1, i, leaves));
}

bool directly_updatable(std::span<const Arity> arities, std::uint32_t i,
                        std::uint64_t leaves) {
  return largest_feasible_base(arities, i, leaves) >= 2;
}

ThresholdDerivation derive_threshold(std::span<const Arity> arities,
                                     std::uint32_t i, int case_id) {
  if (i < 1 || i >= arities.size()) {
    throw PreconditionError("derivation needs 1 <= i < h");
  }
  const uint128 capacity = level_capacity(arities, 1, i);
  if (capacity > kMaxDerivationStates) {
    throw ScaleError("level " + std::to_string(i) + " has too many states");
  }

  ThresholdDerivation d;
  d.rule.case_id = case_id;
  d.rule.min_i = i;
  d.rule.derived = true;
  const auto cap = static_cast<std::uint64_t>(capacity);
  for (std::uint64_t n = 2; n <= cap; ++n) {
    AritySequence p = subtree_profile(arities, i, n);
    ++d.states;
    if (directly_updatable(arities, i, n)) {
      ++d.updatable_states;
      if (!d.max_updatable || *d.max_updatable < p) d.max_updatable = p;
    } else if (!d.min_blocked || p < *d.min_blocked) {
      d.min_blocked = std::move(p);
    }
  }
  if (!d.max_updatable) return d;

  const AritySequence& top = *d.max_updatable;
  if (!d.min_blocked) {
    d.rule.threshold = AritySequence{top.front()};
    return d;
  }
  const AritySequence& low = *d.min_blocked;
  if (!(top < low)) {
    throw OrderInconsistencyError(
        "updatable set is not downward closed at level " + std::to_string(i) +
        ": " + to_string(top) + " is updatable but " + to_string(low) +
        " is not");
  }
  const auto diff = std::mismatch(top.begin(), top.end(), low.begin()).first;
  d.rule.threshold = AritySequence(top.begin(), diff + 1);
  return d;
}

ThresholdDerivation derive_threshold(const ArityPlan& plan, std::uint32_t i) {
  return derive_threshold(plan.arities, i,
                          plan.selection ? plan.selection->case_id : 0);
}

}  // namespace hashtree
