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

#include "hashtree/planner.h"

#include <array>
#include <limits>
#include <sstream>

#include "hashtree/error.h"

namespace hashtree {

namespace {

constexpr uint128 kSaturated = uint128{1} << 127;

// 3^i compared against (num/den) * l, cross-multiplied.
struct Bound {
  std::uint32_t num;
  std::uint32_t den;
  bool strict;  // lower bounds only: 3^i > bound instead of >=
};

// lower <= 3^i < upper, restricted to min_i <= i <= max_i. A missing lower
// bound means the implicit l <= 3^i.
struct Clause {
  std::optional<Bound> lower;
  Bound upper;
  int min_i;
  int max_i;
};

struct CaseRule {
  int id;
  int h5;
  int h4;
  int h3_offset;  // h3 = i + h3_offset
  int h2;
  std::vector<Clause> clauses;
};

constexpr int kAnyI = std::numeric_limits<int>::max();

const std::vector<CaseRule>& case_table() {
  static const std::vector<CaseRule> table = {
      {1, 0, 0, 0, 0,
       {{Bound{1, 1, false}, {9, 8, false}, 1, kAnyI},
        {std::nullopt, {3, 2, false}, 1, 1}}},
      {2, 0, 1, -2, 1,
       {{Bound{9, 8, false}, {81, 64, false}, 2, kAnyI},
        {Bound{81, 64, true}, {27, 20, false}, 2, 3}}},
      {3, 0, 3, -4, 0, {{Bound{81, 64, false}, {27, 20, false}, 4, kAnyI}}},
      {4, 1, 1, -3, 0, {{Bound{27, 20, false}, {3, 2, false}, 3, kAnyI}}},
      {5, 0, 0, -1, 1,
       {{Bound{3, 2, false}, {27, 16, false}, 1, kAnyI},
        {Bound{3, 2, false}, {9, 5, false}, 1, 2},
        {Bound{9, 5, false}, {9, 4, false}, 1, 1}}},
      {6, 0, 2, -3, 0, {{Bound{27, 16, false}, {9, 5, false}, 3, kAnyI}}},
      {7, 1, 0, -2, 0,
       {{Bound{9, 5, false}, {81, 40, false}, 2, kAnyI},
        {Bound{81, 40, false}, {9, 4, false}, 2, 3}}},
      {8, 1, 1, -4, 1, {{Bound{81, 40, false}, {9, 4, false}, 4, kAnyI}}},
      {9, 0, 1, -2, 0,
       {{Bound{9, 4, false}, {81, 32, false}, 2, kAnyI},
        {Bound{81, 32, false}, {3, 1, false}, 2, 2},
        {Bound{81, 32, false}, {27, 10, false}, 1, 3}}},
      {10, 0, 2, -4, 1, {{Bound{81, 32, false}, {27, 10, false}, 4, kAnyI}}},
      {11, 1, 0, -3, 1, {{Bound{27, 10, false}, {3, 1, false}, 3, kAnyI}}},
  };
  return table;
}

uint128 power_of_three(int i) {
  uint128 p = 1;
  for (int k = 0; k < i; ++k) p *= 3;
  return p;
}

bool clause_holds(const Clause& c, int i, uint128 pow3, uint128 l) {
  if (i < c.min_i || i > c.max_i) return false;
  if (c.lower) {
    const uint128 lhs = pow3 * c.lower->den;
    const uint128 rhs = l * c.lower->num;
    if (c.lower->strict ? !(lhs > rhs) : !(lhs >= rhs)) return false;
  }
  return pow3 * c.upper.den < l * c.upper.num;
}

void require_plannable(std::uint64_t l) {
  if (l < 2) {
    throw DegenerateInputError("message length must be at least 2, got " +
                               std::to_string(l));
  }
  if (l > kMaxMessageLength) {
    throw DegenerateInputError("message length exceeds 2^63 - 1");
  }
}

}  // namespace

std::uint64_t ArityPlan::running_time() const {
  std::uint64_t sum = 0;
  for (Arity a : arities) sum += a;
  return sum;
}

int minimal_index(std::uint64_t l) {
  require_plannable(l);
  int i = 1;
  uint128 p = 3;
  while (p < l) {
    p *= 3;
    ++i;
  }
  return i;
}

std::vector<int> matching_cases(std::uint64_t l) {
  const int i = minimal_index(l);
  const uint128 pow3 = power_of_three(i);
  std::vector<int> ids;
  for (const CaseRule& rule : case_table()) {
    for (const Clause& c : rule.clauses) {
      if (clause_holds(c, i, pow3, l)) {
        ids.push_back(rule.id);
        break;
      }
    }
  }
  return ids;
}

CaseSelection select_case(std::uint64_t l) {
  const std::vector<int> ids = matching_cases(l);
  if (ids.size() != 1) {
    std::ostringstream msg;
    msg << "case table is not a partition at l=" << l << ": " << ids.size()
        << " cases fire";
    throw InternalInconsistencyError(msg.str());
  }
  const CaseRule& rule = case_table()[ids.front() - 1];
  CaseSelection s;
  s.case_id = rule.id;
  s.index = minimal_index(l);
  s.h5 = rule.h5;
  s.h4 = rule.h4;
  s.h3 = s.index + rule.h3_offset;
  s.h2 = rule.h2;
  if (s.h3 < 0 || (s.case_id == 1 && s.h3 < 1)) {
    throw InternalInconsistencyError("negative arity count at l=" +
                                     std::to_string(l));
  }
  return s;
}

ArityPlan plan_arities(std::uint64_t l) {
  ArityPlan plan;
  plan.l = l;
  plan.selection = select_case(l);
  const CaseSelection& s = *plan.selection;
  plan.arities.reserve(s.total_levels());
  plan.arities.insert(plan.arities.end(), s.h5, 5);
  plan.arities.insert(plan.arities.end(), s.h4, 4);
  plan.arities.insert(plan.arities.end(), s.h3, 3);
  plan.arities.insert(plan.arities.end(), s.h2, 2);
  return plan;
}

ArityPlan plan_message(std::uint64_t l) {
  if (l == 1) return ArityPlan{1, {}, std::nullopt};
  return plan_arities(l);
}

uint128 level_capacity(std::span<const Arity> arities, std::size_t lo,
                       std::size_t hi) {
  uint128 p = 1;
  for (std::size_t m = lo; m <= hi && m <= arities.size(); ++m) {
    const Arity a = arities[m - 1];
    if (a != 0 && p > kSaturated / a) return kSaturated;
    p *= a;
  }
  return p;
}

bool validate_constraints(std::span<const Arity> arities, std::uint64_t l) {
  if (arities.empty()) return false;
  const uint128 product = level_capacity(arities, 1, arities.size());
  if (product < l) return false;
  for (Arity a : arities) {
    if (product / a >= l) return false;
  }
  return true;
}

std::string to_string(const std::vector<Arity>& arities) {
  std::string out = "(";
  for (std::size_t k = 0; k < arities.size(); ++k) {
    if (k) out += ",";
    out += std::to_string(arities[k]);
  }
  return out + ")";
}

}  // namespace hashtree
