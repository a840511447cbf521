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

#include "hashtree/oracle.h"

#include <algorithm>
#include <array>
#include <atomic>
#include <limits>
#include <map>
#include <sstream>
#include <thread>

#include "json.hpp"

#include "hashtree/engine.h"
#include "hashtree/error.h"
#include "hashtree/hints.h"
#include "hashtree/rework.h"
#include "hashtree/topology.h"

namespace hashtree {

namespace {

class MultisetSearch {
 public:
  MultisetSearch(std::uint64_t l, Arity max_arity)
      : l_(l), max_arity_(max_arity) {}

  std::vector<std::vector<Arity>> at_sum(std::uint64_t s) {
    extend_bounds(s);
    found_.clear();
    current_.clear();
    descend(s, max_arity_, 1);
    return std::move(found_);
  }

 private:
  // best_[r]: an upper bound on the product of any multiset summing to r.
  void extend_bounds(std::uint64_t s) {
    while (best_.size() <= s) {
      const std::size_t r = best_.size();
      uint128 b = r == 0 ? 1 : 0;
      for (Arity a = 2; a <= max_arity_ && a <= r; ++a) {
        b = std::max(b, best_[r - a] * a);
      }
      best_.push_back(b);
    }
  }

  void descend(std::uint64_t remaining, Arity cap, uint128 product) {
    if (remaining == 0) {
      if (product < l_) return;
      for (Arity a : current_) {
        if (product / a >= l_) return;
      }
      found_.push_back(current_);
      return;
    }
    // A full product before the last part means some part is redundant.
    if (!current_.empty() && product >= l_) return;
    if (product * best_[remaining] < l_) return;
    for (Arity a = std::min<std::uint64_t>(cap, remaining); a >= 2; --a) {
      current_.push_back(a);
      descend(remaining - a, a, product * a);
      current_.pop_back();
    }
  }

  std::uint64_t l_;
  Arity max_arity_;
  std::vector<uint128> best_;
  std::vector<Arity> current_;
  std::vector<std::vector<Arity>> found_;
};

constexpr std::uint64_t kNoTree = std::numeric_limits<std::uint64_t>::max();

std::uint64_t add_cost(std::uint64_t a, std::uint64_t b) {
  return a == kNoTree || b == kNoTree ? kNoTree : a + b;
}

}  // namespace

SearchResult brute_force_min_time(std::uint64_t l, Arity max_arity) {
  if (l < 2) throw DegenerateInputError("brute force needs l >= 2");
  if (max_arity < 2) throw PreconditionError("max_arity must be at least 2");
  const auto started = std::chrono::steady_clock::now();
  SearchResult r;
  r.l = l;
  MultisetSearch search(l, max_arity);
  for (std::uint64_t s = 2;; ++s) {
    auto hits = search.at_sum(s);
    if (!hits.empty()) {
      r.min_time = s;
      r.optimal_multisets = std::move(hits);
      break;
    }
  }
  std::sort(r.optimal_multisets.begin(), r.optimal_multisets.end(),
            std::greater<>());
  r.elapsed = std::chrono::steady_clock::now() - started;
  return r;
}

std::vector<Arity> preferred_multiset(
    const std::vector<std::vector<Arity>>& optimal) {
  auto key = [](const std::vector<Arity>& m) {
    return std::array<long, 3>{std::count(m.begin(), m.end(), 5),
                               std::count(m.begin(), m.end(), 4),
                               std::count(m.begin(), m.end(), 3)};
  };
  auto best = std::max_element(
      optimal.begin(), optimal.end(),
      [&](const auto& a, const auto& b) { return key(a) < key(b); });
  return best == optimal.end() ? std::vector<Arity>{} : *best;
}

std::optional<std::uint64_t> min_work_tree(std::uint64_t l,
                                           std::uint64_t time_budget,
                                           std::uint64_t max_leaves) {
  if (l == 0) throw PreconditionError("a tree needs at least one leaf");
  if (l > max_leaves) {
    throw ScaleError("exhaustive tree search is limited to " +
                     std::to_string(max_leaves) + " leaves");
  }
  const std::size_t n_max = l;
  // best[t][n]: minimal work over trees with n leaves and span <= t.
  // split[t][c][n]: cheapest way to spread n leaves over c subtrees of span
  // <= t; only needed for c <= time_budget since a root pays its arity.
  using Row = std::vector<std::uint64_t>;
  std::vector<Row> best(time_budget + 1, Row(n_max + 1, kNoTree));
  std::vector<std::vector<Row>> split(time_budget + 1);
  for (std::uint64_t t = 0; t <= time_budget; ++t) {
    best[t][1] = 0;
    for (std::size_t n = 2; n <= n_max; ++n) {
      std::uint64_t b = kNoTree;
      for (std::uint64_t k = 1; k <= t && k <= n; ++k) {
        b = std::min(b, add_cost(k, split[t - k][k][n]));
      }
      best[t][n] = b;
    }

    auto& table = split[t];
    table.assign(std::max<std::uint64_t>(time_budget, 1) + 1,
                 Row(n_max + 1, kNoTree));
    table[1] = best[t];
    for (std::uint64_t c = 2; c <= time_budget; ++c) {
      for (std::size_t n = c; n <= n_max; ++n) {
        std::uint64_t b = kNoTree;
        for (std::size_t first = 1; first + (c - 1) <= n; ++first) {
          b = std::min(b, add_cost(best[t][first], table[c - 1][n - first]));
        }
        table[c][n] = b;
      }
    }
  }
  const std::uint64_t w = best[time_budget][l];
  if (w == kNoTree) return std::nullopt;
  return w;
}

std::size_t SweepReport::violations() const {
  return static_cast<std::size_t>(std::count_if(
      records.begin(), records.end(), [](const auto& r) { return !r.ok; }));
}

std::string SweepReport::to_jsonl() const {
  std::string out;
  for (const ReportRecord& r : records) {
    nlohmann::ordered_json j;
    j["l"] = r.l;
    j["check"] = r.check;
    j["status"] = r.ok ? "ok" : "violation";
    j["detail"] = r.detail;
    out += j.dump();
    out += '\n';
  }
  return out;
}

namespace {

class SweepWorker {
 public:
  explicit SweepWorker(const SweepOptions& options) : options_(options) {}

  void run(std::uint64_t l, std::vector<ReportRecord>& out) {
    l_ = l;
    out_ = &out;
    const ArityPlan plan = plan_arities(l);
    if (options_.planner_checks) check_planner(plan);
    if (options_.rework_checks) check_rework(plan);
    if (options_.hint_checks) check_hints(plan);
  }

 private:
  void emit(std::string check, bool ok, std::string detail = {}) {
    out_->push_back(ReportRecord{l_, std::move(check), ok, std::move(detail)});
  }

  void check_planner(const ArityPlan& plan) {
    emit("plan_constraints", validate_constraints(plan.arities, plan.l),
         to_string(plan.arities));
    const SearchResult truth = brute_force_min_time(plan.l, options_.max_arity);
    std::ostringstream detail;
    detail << "planner " << plan.running_time() << ", brute force "
           << truth.min_time;
    emit("plan_optimal", plan.running_time() == truth.min_time, detail.str());
    const std::vector<Arity> preferred =
        preferred_multiset(truth.optimal_multisets);
    emit("plan_tiebreak", preferred == plan.arities,
         "planner " + to_string(plan.arities) + ", preferred " +
             to_string(preferred));
  }

  void check_rework(const ArityPlan& plan) {
    const Topology same = build_same_depth(plan);
    const ReworkedTopology re = rework(plan);
    const Metrics before = measure(same);
    const Metrics after = measure(re.tree);

    emit("rework_leaves", re.tree.leaf_count() == plan.l,
         std::to_string(re.tree.leaf_count()) + " leaves");
    emit("rework_time",
         after.running_time == plan.running_time() &&
             before.running_time == plan.running_time(),
         std::to_string(before.running_time) + " -> " +
             std::to_string(after.running_time));
    const bool work_ok = re.changed() ? after.work < before.work
                                      : after.work == before.work;
    emit("rework_work", work_ok,
         std::to_string(before.work) + " -> " + std::to_string(after.work) +
             (re.changed() ? " (reworked)" : " (unchanged)"));
    emit("rework_processors", after.max_processors <= before.max_processors,
         std::to_string(before.max_processors) + " -> " +
             std::to_string(after.max_processors));
    const auto h = static_cast<std::uint32_t>(plan.height());
    emit("rework_h_prime",
         re.changed() ? re.h_prime < h : re.h_prime == h,
         std::to_string(h) + " -> " + std::to_string(re.h_prime));

    bool skip_ok = true;
    std::string skip_detail;
    for (const SpineNode& s : same_depth_spine(plan.arities, 1, h, plan.l)) {
      if (s.level == h || s.leaves < 2 ||
          s.arity != plan.arities[s.level - 1]) {
        continue;
      }
      if (largest_feasible_base(plan.arities, s.level, s.leaves) != 1) {
        skip_ok = false;
        skip_detail = "full node at level " + std::to_string(s.level) +
                      " is rebuildable";
      }
    }
    emit("rework_full_skip", skip_ok, skip_detail);

    for (const ReworkStep& step : re.steps) {
      if (!step.unit_root) continue;
      emit("rework_unit_root", true,
           "finding: rebuild at level " + std::to_string(step.level) +
               " with base " + std::to_string(step.base) + " over " +
               std::to_string(step.leaves) + " blocks has a unary root");
    }
  }

  void check_hints(const ArityPlan& plan) {
    const auto h = static_cast<std::uint32_t>(plan.height());
    const int case_id = plan.selection->case_id;
    bool fixed_seen = false;
    bool fixed_ok = true;
    bool derived_ok = true;
    std::string fixed_detail;
    std::string derived_detail;
    for (const SpineNode& s : same_depth_spine(plan.arities, 1, h, plan.l)) {
      if (s.level == h || s.leaves < 2) continue;
      const AritySequence profile =
          subtree_profile(plan.arities, s.level, s.leaves);
      const bool direct = directly_updatable(plan.arities, s.level, s.leaves);

      if (case_id <= 3) {
        try {
          const ThresholdRule rule = threshold_for(case_id, s.level);
          fixed_seen = true;
          if (updatable(rule, profile) != direct) {
            fixed_ok = false;
            fixed_detail = "level " + std::to_string(s.level) +
                               " profile " + to_string(profile) +
                               " vs threshold " + to_string(*rule.threshold);
          }
        } catch (const UnsupportedConstantError&) {
        }
      }

      try {
        const ThresholdRule& rule = derived_rule(plan, s.level);
        if (updatable(rule, profile) != direct) {
          derived_ok = false;
          derived_detail = "level " + std::to_string(s.level) + " profile " +
                           to_string(profile);
        }
      } catch (const Error& e) {
        derived_ok = false;
        derived_detail = e.what();
      }
    }
    if (fixed_seen) {
      emit("hint_fixed", fixed_ok, fixed_detail);
    }
    emit("hint_derived", derived_ok, derived_detail);
  }

  const ThresholdRule& derived_rule(const ArityPlan& plan, std::uint32_t i) {
    std::vector<Arity> key(plan.arities.begin(), plan.arities.begin() + i + 1);
    auto it = derived_.find(key);
    if (it == derived_.end()) {
      it = derived_.emplace(key, derive_threshold(plan, i).rule).first;
    }
    return it->second;
  }

  const SweepOptions& options_;
  std::uint64_t l_ = 0;
  std::vector<ReportRecord>* out_ = nullptr;
  std::map<std::vector<Arity>, ThresholdRule> derived_;
};

}  // namespace

SweepReport sweep_verify(std::uint64_t l_min, std::uint64_t l_max,
                         const SweepOptions& options) {
  if (l_min < 2) throw DegenerateInputError("sweep must start at l >= 2");
  SweepReport report;
  if (l_max < l_min) return report;

  const std::uint64_t count = l_max - l_min + 1;
  unsigned threads = options.threads
                         ? options.threads
                         : std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::uint64_t>(threads, count));

  // Per-l buckets keep the report ordered regardless of scheduling.
  std::vector<std::vector<ReportRecord>> buckets(count);
  std::atomic<std::uint64_t> next{0};
  {
    std::vector<std::jthread> pool;
    for (unsigned w = 0; w < threads; ++w) {
      pool.emplace_back([&] {
        SweepWorker worker(options);
        for (std::uint64_t k = next++; k < count; k = next++) {
          try {
            worker.run(l_min + k, buckets[k]);
          } catch (const std::exception& e) {
            buckets[k].push_back(
                ReportRecord{l_min + k, "exception", false, e.what()});
          }
        }
      });
    }
  }
  for (auto& bucket : buckets) {
    std::move(bucket.begin(), bucket.end(), std::back_inserter(report.records));
  }
  return report;
}

}  // namespace hashtree
