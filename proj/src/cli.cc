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

#include "hashtree/cli.h"

#include <algorithm>
#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "hashtree/compact.h"
#include "hashtree/engine.h"
#include "hashtree/error.h"
#include "hashtree/oracle.h"
#include "hashtree/planner.h"
#include "hashtree/rework.h"
#include "hashtree/topology.h"

namespace hashtree {

namespace {

using Json = nlohmann::ordered_json;

class IoError : public Error {
 public:
  using Error::Error;
};

struct Request {
  std::string format = "text";
  std::uint64_t l = 0;
  std::uint64_t from = 2;
  std::uint64_t to = 1000;
  unsigned threads = 0;
  std::string path;
  bool same_depth = false;
};

void require_length(std::uint64_t l, std::uint64_t minimum) {
  if (l < minimum) {
    throw DegenerateInputError("message length must be at least " +
                               std::to_string(minimum) + ", got " +
                               std::to_string(l));
  }
}

std::string join(const std::vector<Arity>& v) { return to_string(v); }

void print_metrics_text(std::ostream& out, const Metrics& m) {
  out << "time: " << m.running_time << "\n"
      << "work: " << m.work << "\n"
      << "internal_nodes: " << m.internal_nodes << "\n"
      << "max_processors: " << m.max_processors << "\n";
}

int cmd_plan(const Request& r, std::ostream& out) {
  require_length(r.l, 2);
  const ArityPlan plan = plan_arities(r.l);
  const CaseSelection& s = *plan.selection;
  const Metrics m = measure(build_same_depth(plan));
  if (r.format == "json") {
    Json j;
    j["l"] = plan.l;
    j["case"] = s.case_id;
    j["i"] = s.index;
    j["h5"] = s.h5;
    j["h4"] = s.h4;
    j["h3"] = s.h3;
    j["h2"] = s.h2;
    j["arities"] = plan.arities;
    j["time"] = m.running_time;
    j["work"] = m.work;
    j["max_processors"] = m.max_processors;
    out << j.dump() << "\n";
    return kExitOk;
  }
  out << "l: " << plan.l << "\n"
      << "case: " << s.case_id << " (i=" << s.index << ")\n"
      << "counts: h5=" << s.h5 << " h4=" << s.h4 << " h3=" << s.h3
      << " h2=" << s.h2 << "\n"
      << "arities: " << join(plan.arities) << "\n"
      << "time: " << m.running_time << "\n"
      << "work: " << m.work << "\n"
      << "max_processors: " << m.max_processors << "\n";
  return kExitOk;
}

int cmd_build(const Request& r, std::ostream& out) {
  require_length(r.l, 1);
  const ArityPlan plan = plan_message(r.l);
  const Topology t = build_same_depth(plan);
  const CompactForm c{plan.l, plan.arities, rightmost_profile(t),
                      TreeForm::kSameDepth};
  if (r.format == "json") {
    out << to_json(c).dump() << "\n";
    return kExitOk;
  }
  const Metrics m = measure(t);
  out << "l: " << plan.l << "\n"
      << "form: same_depth\n"
      << "arities: " << join(plan.arities) << "\n"
      << "rightmost: " << join(c.rightmost) << "\n";
  print_metrics_text(out, m);
  out << "level_counts:";
  for (std::uint64_t n : m.level_counts) out << " " << n;
  out << "\n";
  return kExitOk;
}

int cmd_rework(const Request& r, std::ostream& out) {
  require_length(r.l, 2);
  const ArityPlan plan = plan_arities(r.l);
  const ReworkedTopology re = rework(plan);
  const CompactForm c = to_compact(re, plan);
  const std::vector<RightmostProfile> trace = re.trace();
  if (r.format == "json") {
    out << to_json(c, trace).dump() << "\n";
    return kExitOk;
  }
  out << "l: " << plan.l << "\n"
      << "form: reworked\n"
      << "arities: " << join(plan.arities) << "\n"
      << "rightmost: " << join(c.rightmost) << "\n"
      << "h_prime: " << re.h_prime << "\n";
  print_metrics_text(out, measure(re.tree));
  out << "trace:";
  if (trace.empty()) out << " none";
  out << "\n";
  for (const RightmostProfile& p : trace) out << "  " << join(p) << "\n";
  return kExitOk;
}

Json metrics_json(const Topology& t) {
  const Metrics m = measure(t);
  Json j;
  j["rightmost"] = rightmost_profile(t);
  j["time"] = m.running_time;
  j["work"] = m.work;
  j["internal_nodes"] = m.internal_nodes;
  j["max_processors"] = m.max_processors;
  return j;
}

int cmd_analyze(const Request& r, std::ostream& out) {
  require_length(r.l, 2);
  const ArityPlan plan = plan_arities(r.l);
  const Topology same = build_same_depth(plan);
  const ReworkedTopology re = rework(plan);
  const std::vector<RightmostProfile> trace = re.trace();
  if (r.format == "json") {
    Json j;
    j["l"] = plan.l;
    j["arities"] = plan.arities;
    j["same_depth"] = metrics_json(same);
    j["reworked"] = metrics_json(re.tree);
    j["trace"] = trace;
    j["rework_applied"] = re.changed();
    out << j.dump() << "\n";
    return kExitOk;
  }
  const Metrics before = measure(same);
  const Metrics after = measure(re.tree);
  auto row = [&out](std::string_view name, const std::string& a,
                    const std::string& b) {
    out << name << ": " << a << " -> " << b << "\n";
  };
  out << "l: " << plan.l << "\n"
      << "arities: " << join(plan.arities) << "\n";
  row("rightmost", join(rightmost_profile(same)), join(profile_of(re.spine)));
  row("time", std::to_string(before.running_time),
      std::to_string(after.running_time));
  row("work", std::to_string(before.work), std::to_string(after.work));
  row("internal_nodes", std::to_string(before.internal_nodes),
      std::to_string(after.internal_nodes));
  row("max_processors", std::to_string(before.max_processors),
      std::to_string(after.max_processors));
  if (!re.changed()) {
    out << "no rework applicable\n";
    return kExitOk;
  }
  out << "trace:\n";
  for (const ReworkStep& s : re.steps) {
    out << "  " << join(s.profile)
        << (s.kind == ReworkStep::Kind::kCollapse
                ? "  collapse at level " + std::to_string(s.level)
                : "  rebuild level " + std::to_string(s.level) +
                      " from base " + std::to_string(s.base) + " over " +
                      std::to_string(s.leaves) + " blocks")
        << (s.unit_root ? " (unary root)" : "") << "\n";
  }
  return kExitOk;
}

int cmd_verify(const Request& r, std::ostream& out) {
  require_length(r.from, 2);
  if (r.to < r.from) {
    throw PreconditionError("empty range: --to " + std::to_string(r.to) +
                            " is below --from " + std::to_string(r.from));
  }
  SweepOptions options;
  options.threads = r.threads;
  const SweepReport report = sweep_verify(r.from, r.to, options);
  if (r.format == "json") {
    out << report.to_jsonl();
  } else {
    std::size_t findings = 0;
    for (const ReportRecord& rec : report.records) {
      if (!rec.ok) {
        out << "violation l=" << rec.l << " " << rec.check << ": "
            << rec.detail << "\n";
      } else if (rec.detail.starts_with("finding:")) {
        ++findings;
        out << "finding l=" << rec.l << " " << rec.check << ": "
            << rec.detail.substr(9) << "\n";
      }
    }
    out << "checked l=" << r.from << ".." << r.to << ": "
        << report.records.size() << " records, " << report.violations()
        << " violations, " << findings << " findings\n";
  }
  return report.violations() == 0 ? kExitOk : kExitViolations;
}

std::vector<std::byte> read_input(const std::string& path) {
  std::vector<char> raw;
  if (path == "-") {
    raw.assign(std::istreambuf_iterator<char>(std::cin),
               std::istreambuf_iterator<char>());
  } else {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open " + path);
    raw.assign(std::istreambuf_iterator<char>(in),
               std::istreambuf_iterator<char>());
    if (in.bad()) throw IoError("read failed for " + path);
  }
  std::vector<std::byte> bytes(raw.size());
  std::transform(raw.begin(), raw.end(), bytes.begin(),
                 [](char c) { return static_cast<std::byte>(c); });
  return bytes;
}

int cmd_hash(const Request& r, std::ostream& out) {
  const std::vector<Block> blocks = blocks_from_bytes(read_input(r.path));
  const std::uint64_t l = blocks.size();
  const ArityPlan plan = plan_message(l);
  const bool same = r.same_depth || l == 1;
  const Topology t = same ? build_same_depth(plan) : rework(plan).tree;
  const HashResult h = hash_tree(blocks, t, default_primitive());
  const std::string_view form = same ? "same_depth" : "reworked";
  if (r.format == "json") {
    Json j;
    j["digest"] = to_hex(h.digest);
    j["l"] = l;
    j["form"] = form;
    j["time"] = h.profile.makespan;
    j["work"] = h.profile.total_units;
    j["max_processors"] = h.profile.max_processors;
    out << j.dump() << "\n";
    return kExitOk;
  }
  out << "digest: " << to_hex(h.digest) << "\n"
      << "l: " << l << "\n"
      << "form: " << form << "\n"
      << "time: " << h.profile.makespan << "\n"
      << "work: " << h.profile.total_units << "\n"
      << "max_processors: " << h.profile.max_processors << "\n";
  return kExitOk;
}

}  // namespace

int run_cli(std::span<const std::string> args, std::ostream& out,
            std::ostream& err) {
  CLI::App app{"Plan, rework and hash over optimal parallel hash trees",
               "hashtree"};
  app.require_subcommand(1);
  app.fallthrough();

  Request r;
  app.add_option("--format", r.format, "Output format")
      ->check(CLI::IsMember({"text", "json"}))
      ->capture_default_str();

  auto* plan = app.add_subcommand("plan", "Optimal arity multiset for l");
  plan->add_option("l", r.l, "Message length in blocks")->required();
  auto* build = app.add_subcommand("build", "Same-depth tree for l");
  build->add_option("l", r.l, "Message length in blocks")->required();
  auto* rw = app.add_subcommand("rework", "Reworked tree for l");
  rw->add_option("l", r.l, "Message length in blocks")->required();
  auto* analyze =
      app.add_subcommand("analyze", "Compare same-depth and reworked trees");
  analyze->add_option("l", r.l, "Message length in blocks")->required();
  auto* verify = app.add_subcommand("verify", "Sweep against the oracles");
  verify->add_option("--from", r.from, "First message length")
      ->capture_default_str();
  verify->add_option("--to", r.to, "Last message length")
      ->capture_default_str();
  verify->add_option("--threads", r.threads, "Worker threads (0: all cores)");
  auto* hash = app.add_subcommand("hash", "Tree-hash a file ('-' for stdin)");
  hash->add_option("path", r.path, "Input file")->required();
  hash->add_flag("--same-depth", r.same_depth, "Skip the rework");

  std::vector<std::string> argv(args.begin() + (args.empty() ? 0 : 1),
                                args.end());
  std::reverse(argv.begin(), argv.end());
  try {
    app.parse(argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*plan) return cmd_plan(r, out);
    if (*build) return cmd_build(r, out);
    if (*rw) return cmd_rework(r, out);
    if (*analyze) return cmd_analyze(r, out);
    if (*verify) return cmd_verify(r, out);
    if (*hash) return cmd_hash(r, out);
  } catch (const IoError& e) {
    err << "hashtree: " << e.what() << "\n";
    return kExitIo;
  } catch (const Error& e) {
    err << "hashtree: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}

}  // namespace hashtree
