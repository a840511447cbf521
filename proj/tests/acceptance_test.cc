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

// Acceptance suite. Prints one PASS/FAIL line per criterion and exits
// nonzero if any selected criterion fails.
//
//   acceptance_test                 run all criteria
//   acceptance_test --criterion N   run criterion N only

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <cstdio>
#include <cstring>
#include <functional>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "hashtree/engine.h"
#include "hashtree/error.h"
#include "hashtree/hints.h"
#include "hashtree/oracle.h"
#include "hashtree/planner.h"
#include "hashtree/rework.h"
#include "hashtree/topology.h"

namespace hashtree {
namespace {

using Seq = std::vector<Arity>;

// Every comparison below is exact; the only tolerances are wall-clock limits.
constexpr std::uint64_t kAllowedViolations = 0;

struct Outcome {
  bool pass = false;
  std::string detail;
};

struct Criterion {
  int id;
  const char* name;
  double limit_seconds;
  std::function<Outcome()> run;
};

std::string seq(const Seq& s) { return to_string(s); }

// Collects violations under a label, keeping the first example.
class Tally {
 public:
  void check(bool ok, const std::string& label, const std::string& example) {
    auto& [count, first] = entries_[label];
    if (ok) return;
    if (count == 0) first = example;
    ++count;
  }
  std::uint64_t total() const {
    std::uint64_t n = 0;
    for (const auto& [label, e] : entries_) n += e.first;
    return n;
  }
  std::string summary() const {
    std::ostringstream os;
    bool any = false;
    for (const auto& [label, e] : entries_) {
      if (e.first == 0) continue;
      os << (any ? "; " : "") << label << "=" << e.first << " (first: "
         << e.second << ")";
      any = true;
    }
    return any ? os.str() : "no violations";
  }

 private:
  std::map<std::string, std::pair<std::uint64_t, std::string>> entries_;
};

Outcome worked_example() {
  const ArityPlan plan = plan_arities(17983);
  const Topology same = build_same_depth(plan);
  const ReworkedTopology re = rework(plan);
  const auto trace = re.trace();
  Tally t;
  t.check(plan.arities == Seq(9, 3), "arities", seq(plan.arities));
  t.check(rightmost_profile(same) == Seq{3, 3, 1, 3, 1, 1, 1, 1, 1},
          "same_depth_profile", seq(rightmost_profile(same)));
  t.check(std::find(trace.begin(), trace.end(),
                    Seq{3, 3, 3, 1, 1, 1, 1, 1}) != trace.end(),
          "trace_state", std::to_string(trace.size()) + " states");
  t.check(rightmost_profile(re.tree) == Seq{3, 3, 3}, "final_profile",
          seq(rightmost_profile(re.tree)));
  return {t.total() == kAllowedViolations,
          "arities " + seq(plan.arities) + ", final " +
              seq(rightmost_profile(re.tree)) + "; " + t.summary()};
}

Outcome optimality_sweep() {
  Tally t;
  for (std::uint64_t l = 2; l <= 3000; ++l) {
    const ArityPlan plan = plan_arities(l);
    const SearchResult brute = brute_force_min_time(l, 9);
    const std::string at = "l=" + std::to_string(l);
    t.check(plan.running_time() == brute.min_time, "time",
            at + " planner " + std::to_string(plan.running_time()) +
                " brute " + std::to_string(brute.min_time));
    t.check(validate_constraints(plan.arities, l), "constraints",
            at + " " + seq(plan.arities));
    const Seq preferred = preferred_multiset(brute.optimal_multisets);
    t.check(preferred == plan.arities, "tiebreak",
            at + " planner " + seq(plan.arities) + " preferred " +
                seq(preferred));
  }
  return {t.total() == kAllowedViolations, "l=2..3000; " + t.summary()};
}

Outcome uniqueness_sweep() {
  std::uint64_t none = 0, several = 0, first_bad = 0;
  for (std::uint64_t l = 2; l <= 1000000; ++l) {
    const std::size_t n = matching_cases(l).size();
    if (n == 1) continue;
    (n == 0 ? none : several)++;
    if (first_bad == 0) first_bad = l;
  }
  const std::uint64_t bad = none + several;
  std::string detail = "l=2..1000000; no case " + std::to_string(none) +
                       ", several cases " + std::to_string(several);
  if (bad) detail += ", first l=" + std::to_string(first_bad);
  return {bad == kAllowedViolations, detail};
}

Outcome rework_properties() {
  Tally t;
  std::uint64_t changed = 0;
  for (std::uint64_t l = 2; l <= 5000; ++l) {
    const ArityPlan plan = plan_arities(l);
    const Topology same = build_same_depth(plan);
    const ReworkedTopology re = rework(plan);
    const Metrics a = measure(same);
    const Metrics b = measure(re.tree);
    const std::string at = "l=" + std::to_string(l) + " " + seq(plan.arities);
    if (re.changed()) ++changed;
    t.check(re.tree.leaf_count() == l, "leaves", at);
    t.check(b.running_time == a.running_time, "time",
            at + " " + std::to_string(a.running_time) + "->" +
                std::to_string(b.running_time));
    const bool work_ok =
        re.changed() ? b.work < a.work : b.work <= a.work;
    t.check(work_ok, "work",
            at + " " + std::to_string(a.work) + "->" + std::to_string(b.work));
    t.check(b.max_processors <= a.max_processors, "processors",
            at + " " + std::to_string(a.max_processors) + "->" +
                std::to_string(b.max_processors));
  }
  return {t.total() == kAllowedViolations,
          "l=2..5000, " + std::to_string(changed) + " reworked; " +
              t.summary()};
}

Outcome order_vectors() {
  struct Case {
    Seq r, q;
    bool expected;
  };
  const Case cases[] = {
      {{1, 2, 3, 1}, {1, 1, 4}, false},
      {{2, 1, 4, 1}, {1, 1, 4}, false},
      {{3, 1, 1, 9, 1}, {3, 1, 2, 4}, true},
      {{5, 2, 1, 2, 1}, {5, 2, 1, 2}, true},
  };
  Tally t;
  for (const Case& c : cases) {
    t.check(seq_precedes(c.r, c.q) == c.expected, "comparison",
            seq(c.r) + " vs " + seq(c.q));
  }
  return {t.total() == kAllowedViolations, "4 comparisons; " + t.summary()};
}

ThresholdRule rule_for(const ArityPlan& plan, std::uint32_t i) {
  try {
    return threshold_for(plan.selection->case_id, i);
  } catch (const UnsupportedConstantError&) {
    return derive_threshold(plan, i).rule;
  }
}

Outcome hint_equivalence() {
  Tally t;
  // Distinct case 1-3 plans of height at most 10.
  std::map<Seq, ArityPlan> plans;
  for (std::uint64_t l = 2; l <= 3 * 59049; ++l) {
    const ArityPlan plan = plan_arities(l);
    if (plan.height() > 10 || plan.selection->case_id > 3) continue;
    plans.emplace(plan.arities, plan);
  }
  std::uint64_t states = 0;
  for (const auto& [arities, plan] : plans) {
    for (std::uint32_t i = 1; i < plan.height(); ++i) {
      const ThresholdRule rule = rule_for(plan, i);
      const auto cap =
          static_cast<std::uint64_t>(level_capacity(arities, 1, i));
      for (std::uint64_t li = 2; li <= cap; ++li, ++states) {
        const Seq profile = subtree_profile(arities, i, li);
        const bool by_rule = updatable(rule, profile);
        t.check(by_rule == directly_updatable(arities, i, li),
                "case" + std::to_string(rule.case_id) +
                    (rule.derived ? "_derived" : "_fixed"),
                seq(arities) + " i=" + std::to_string(i) +
                    " l_i=" + std::to_string(li) + " profile " +
                    seq(profile) + " rule " +
                    (rule.threshold ? seq(*rule.threshold) : "none"));
      }
    }
  }

  auto derived = [](std::uint64_t l, std::uint32_t i) {
    return derive_threshold(plan_arities(l), i).rule.threshold;
  };
  const Seq threes(9, 3);
  for (std::uint32_t i = 2; i <= 8; ++i) {
    const auto d = derive_threshold(threes, i).rule.threshold;
    t.check(d == Seq{1}, "derive_case1",
            "i=" + std::to_string(i) + " " + (d ? seq(*d) : "none"));
  }
  // 1729: (4,3,3,3,3,3,2). 3549875: (4,4,4,3,...,3), height 13.
  const auto two_2 = derived(1729, 2);
  t.check(two_2 == Seq{1, 3}, "derive_case2_i2", two_2 ? seq(*two_2) : "none");
  const auto two_5 = derived(1729, 5);
  t.check(two_5 == Seq{1, 3, 1}, "derive_case2_i5",
          two_5 ? seq(*two_5) : "none");
  const auto three_12 = derived(3549875, 12);
  t.check(three_12 == Seq{1, 3, 1, 3, 1, 3, 1, 3, 1, 3, 1, 2},
          "derive_case3_i12", three_12 ? seq(*three_12) : "none");

  return {t.total() == kAllowedViolations,
          std::to_string(plans.size()) + " plans, " + std::to_string(states) +
              " states; " + t.summary()};
}

Outcome engine_consistency() {
  Tally t;
  const CompressionPrimitive prim = default_primitive();
  for (std::uint64_t l = 2; l <= 2000; ++l) {
    std::vector<Block> blocks(l);
    for (std::uint64_t k = 0; k < l; ++k) blocks[k] = k * 0x9E3779B97F4A7C15ULL + l;
    const ArityPlan plan = plan_arities(l);
    const Topology trees[] = {build_same_depth(plan), rework(plan).tree};
    for (const Topology& tree : trees) {
      const std::string at = "l=" + std::to_string(l);
      const HashResult seq_run = hash_tree(blocks, tree, prim);
      t.check(seq_run.units == work(tree), "units", at);
      t.check(seq_run.profile.makespan == running_time(tree), "makespan", at);
      const HashResult shuffled =
          hash_tree(blocks, tree, prim, {EvalOrder::kShuffled, l, 0});
      t.check(shuffled.digest == seq_run.digest, "shuffled_digest", at);
      t.check(shuffled.units == work(tree), "shuffled_units", at);
      const HashResult parallel =
          hash_tree(blocks, tree, prim, {EvalOrder::kParallel, 0, 4});
      t.check(parallel.digest == seq_run.digest, "parallel_digest", at);
      t.check(parallel.units == work(tree), "parallel_units", at);
    }
  }
  return {t.total() == kAllowedViolations, "l=2..2000; " + t.summary()};
}

Outcome work_minimality() {
  std::uint64_t above = 0, gaps = 0;
  std::ostringstream findings;
  for (std::uint64_t l = 2; l <= 40; ++l) {
    const ArityPlan plan = plan_arities(l);
    const std::uint64_t reworked = work(rework(plan).tree);
    const auto best = min_work_tree(l, plan.running_time());
    if (!best || *best > reworked) {
      ++above;
      continue;
    }
    if (*best < reworked) {
      findings << (gaps ? " " : "") << "l=" << l << ":" << *best << "<"
               << reworked;
      ++gaps;
    }
  }
  std::string detail = "l=2..40; oracle above rework " +
                       std::to_string(above) + ", findings " +
                       std::to_string(gaps);
  if (gaps) detail += " [" + findings.str() + "]";
  return {above == kAllowedViolations, detail};
}

const std::vector<Criterion>& criteria() {
  static const std::vector<Criterion> all = {
      {1, "worked example l=17983", 1.0, worked_example},
      {2, "optimality against brute force", 300.0, optimality_sweep},
      {3, "case uniqueness", 60.0, uniqueness_sweep},
      {4, "rework properties", 120.0, rework_properties},
      {5, "order comparisons", 1.0, order_vectors},
      {6, "hint equivalence", 180.0, hint_equivalence},
      {7, "engine consistency", 120.0, engine_consistency},
      {8, "work against exhaustive oracle", 600.0, work_minimality},
  };
  return all;
}

bool run(const Criterion& c) {
  const auto start = std::chrono::steady_clock::now();
  Outcome o;
  try {
    o = c.run();
  } catch (const std::exception& e) {
    o = {false, std::string("exception: ") + e.what()};
  }
  const double seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
          .count();
  const bool in_time = seconds < c.limit_seconds;
  const bool pass = o.pass && in_time;
  std::printf("%s criterion %d (%s): %.3f s, limit %.0f s%s; %s\n",
              pass ? "PASS" : "FAIL", c.id, c.name, seconds, c.limit_seconds,
              in_time ? "" : " EXCEEDED", o.detail.c_str());
  std::fflush(stdout);
  return pass;
}

}  // namespace
}  // namespace hashtree

int main(int argc, char** argv) {
  int only = 0;
  for (int k = 1; k < argc; ++k) {
    if (std::strcmp(argv[k], "--criterion") == 0 && k + 1 < argc) {
      only = std::atoi(argv[++k]);
    } else {
      std::fprintf(stderr, "usage: %s [--criterion N]\n", argv[0]);
      return 2;
    }
  }
  bool ok = true;
  bool ran = false;
  for (const auto& c : hashtree::criteria()) {
    if (only != 0 && c.id != only) continue;
    ran = true;
    ok = hashtree::run(c) && ok;
  }
  if (!ran) {
    std::fprintf(stderr, "no criterion %d\n", only);
    return 2;
  }
  return ok ? 0 : 1;
}
