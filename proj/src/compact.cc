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

#include "hashtree/compact.h"

#include "hashtree/error.h"

namespace hashtree {

std::string_view form_name(TreeForm form) {
  return form == TreeForm::kSameDepth ? "same_depth" : "reworked";
}

CompactForm to_compact(const Topology& t, const ArityPlan& plan) {
  CompactForm c{plan.l, plan.arities, rightmost_profile(t),
                TreeForm::kSameDepth};
  if (t == build_same_depth(plan)) return c;
  if (plan.l >= 2 && t == rework(plan).tree) {
    c.form = TreeForm::kReworked;
    return c;
  }
  throw PreconditionError("topology was not produced from this plan");
}

CompactForm to_compact(const ReworkedTopology& r, const ArityPlan& plan) {
  return CompactForm{plan.l, plan.arities, profile_of(r.spine),
                     TreeForm::kReworked};
}

Topology from_compact(const CompactForm& c) {
  Topology t = c.form == TreeForm::kReworked && c.l >= 2
                   ? rework(c.l, c.arities).tree
                   : build_same_depth(c.l, c.arities);
  const RightmostProfile actual = rightmost_profile(t);
  if (actual != c.rightmost) {
    throw CorruptionError("stored rightmost profile " + to_string(c.rightmost) +
                          " does not match recomputed " + to_string(actual));
  }
  return t;
}

nlohmann::ordered_json to_json(const CompactForm& c) {
  nlohmann::ordered_json j;
  j["l"] = c.l;
  j["arities"] = c.arities;
  j["rightmost"] = c.rightmost;
  j["form"] = form_name(c.form);
  return j;
}

nlohmann::ordered_json to_json(const CompactForm& c,
                               std::span<const RightmostProfile> trace) {
  nlohmann::ordered_json j = to_json(c);
  j["trace"] = nlohmann::ordered_json::array();
  for (const RightmostProfile& p : trace) j["trace"].push_back(p);
  return j;
}

CompactForm compact_from_json(std::string_view text) {
  try {
    const auto j = nlohmann::json::parse(text);
    CompactForm c;
    c.l = j.at("l").get<std::uint64_t>();
    c.arities = j.at("arities").get<std::vector<Arity>>();
    c.rightmost = j.at("rightmost").get<RightmostProfile>();
    const auto form = j.at("form").get<std::string>();
    if (form == "same_depth") {
      c.form = TreeForm::kSameDepth;
    } else if (form == "reworked") {
      c.form = TreeForm::kReworked;
    } else {
      throw InputError("unknown form \"" + form + "\"");
    }
    return c;
  } catch (const nlohmann::json::exception& e) {
    throw InputError(std::string("malformed topology document: ") + e.what());
  }
}

}  // namespace hashtree
