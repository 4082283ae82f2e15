/* Copyright 2026 The egypt Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "egypt/dyadic.hpp"

#include <algorithm>

#include "egypt/error.hpp"

namespace egypt {

TowerMultiset expand_words(std::uint32_t v, const Nat& x) {
  TowerMultiset level;
  level.add(x);
  for (std::uint32_t j = 0; j < v; ++j) {
    TowerMultiset next;
    for (const auto& [y, c] : level) {
      Nat succ = y + Nat(1);
      next.add(y * succ, c);
      next.add(succ, c);
    }
    level = std::move(next);
  }
  return level;
}

StageFamily init_stage1(const Parameters& params) {
  StageFamily f;
  f.stage = 1;
  f.params = make_parameters(params.k, params.n, params.d);
  const Nat base = Nat(2) * f.params.kd();
  f.sets.push_back({base});
  f.sets.push_back(expand_words(1, base).support());
  return f;
}

Rat stage_sigma_target(std::uint32_t i, const Parameters& params) {
  if (i == 0) throw Error(Errc::invalid_argument, "stage index must be >= 1");
  const Nat two_i = nat_pow(Nat(2), i);
  return Rat(two_i - Nat(1), two_i * params.kd());
}

StageAudit audit_stage(const StageFamily& family) {
  StageAudit a;
  const Nat kd = family.params.kd();
  const Nat start = Nat(2) * kd;
  const std::uint32_t i = family.stage;

  if (family.sets.size() != static_cast<std::size_t>(i) + 1) {
    a.failures.push_back("stage " + std::to_string(i) + " has " + std::to_string(family.sets.size()) +
                         " sets, expected " + std::to_string(i + 1));
  }

  std::vector<Nat> expected_s0;
  for (std::uint32_t v = 1; v <= i; ++v) expected_s0.push_back(nat_pow(Nat(2), v) * kd);
  if (family.sets.empty() || family.sets[0] != expected_s0) {
    a.s0_exact = false;
    a.failures.push_back("S_0 is not {2^v kd : v in [1," + std::to_string(i) + "]}");
  }

  std::set<Nat> seen;
  const Rat target = i == 0 ? Rat() : stage_sigma_target(i, family.params);
  for (std::size_t u = 0; u < family.sets.size(); ++u) {
    const auto& s = family.sets[u];
    for (std::size_t j = 0; j + 1 < s.size(); ++j) {
      if (!(s[j] < s[j + 1])) {
        a.simple = false;
        a.failures.push_back("S_" + std::to_string(u) + " is not strictly ascending");
        break;
      }
    }
    for (const auto& e : s) {
      if (!seen.insert(e).second) {
        a.disjoint = false;
        a.failures.push_back("element " + e.to_decimal() + " repeats (found again in S_" + std::to_string(u) + ")");
      }
    }
    if (i > 0 && !reciprocal_sum_equals(s, target)) {
      a.sigma_exact = false;
      a.failures.push_back("sigma(S_" + std::to_string(u) + ") = " + reciprocal_sum(s).to_string() +
                           ", expected " + target.to_string());
    }
    if (u >= 1 && !std::binary_search(s.begin(), s.end(), start + Nat(u))) {
      a.anchor_misses.push_back(static_cast<std::uint32_t>(u));
    }
  }

  a.coverage_end = start - Nat(1);
  while (seen.count(a.coverage_end + Nat(1)) != 0) ++a.coverage_end;
  if (a.coverage_end < start + Nat(i)) {
    a.coverage = false;
    a.failures.push_back("coverage stops at " + a.coverage_end.to_decimal() + ", needs [" + start.to_decimal() +
                         "," + (start + Nat(i)).to_decimal() + "]");
  }
  return a;
}

namespace {

// Largest c >= 2kd-1 such that a and b agree on [2kd, c]; nullopt if equal.
std::optional<Nat> agreement_cutoff(const std::vector<Nat>& a, const std::vector<Nat>& b) {
  std::size_t j = 0;
  while (j < a.size() && j < b.size() && a[j] == b[j]) ++j;
  if (j == a.size() && j == b.size()) return std::nullopt;
  const Nat* first_diff = nullptr;
  if (j == a.size()) {
    first_diff = &b[j];
  } else if (j == b.size()) {
    first_diff = &a[j];
  } else {
    first_diff = a[j] < b[j] ? &a[j] : &b[j];
  }
  return *first_diff - Nat(1);
}

bool agrees_up_to(const std::vector<Nat>& a, const std::vector<Nat>& b, const Nat& cutoff) {
  auto ea = std::upper_bound(a.begin(), a.end(), cutoff);
  auto eb = std::upper_bound(b.begin(), b.end(), cutoff);
  return std::equal(a.begin(), ea, b.begin(), eb);
}

}  // namespace

StabilityReport prefix_stability_report(const StageFamily& current, const StageFamily& next,
                                        const Nat& cutoff) {
  if (next.stage != current.stage + 1) {
    throw Error(Errc::invalid_argument, "stability report needs consecutive stages");
  }
  StabilityReport r;
  r.cutoff = cutoff;
  const std::size_t common = std::min(current.sets.size(), next.sets.size());
  std::optional<Nat> family;
  for (std::size_t u = 0; u < common; ++u) {
    r.agrees_at_cutoff.push_back(agrees_up_to(current.sets[u], next.sets[u], cutoff));
    auto c = agreement_cutoff(current.sets[u], next.sets[u]);
    if (c && (!family || *c < *family)) family = *c;
    r.per_set_cutoff.push_back(std::move(c));
  }
  // S_0 always gains 2^(i+1) kd, so at least one set differs.
  r.family_cutoff = family.value_or(Nat(0));
  return r;
}

StageExtension begin_extension(const StageFamily& family) {
  StageExtension ext;
  ext.base = family;
  const std::uint32_t next = family.stage + 1;
  const Nat fresh = nat_pow(Nat(2), next) * family.params.kd();
  ext.s0 = family.sets.at(0);
  ext.s0.push_back(fresh);
  for (std::uint32_t v = 1; v <= family.stage; ++v) {
    ext.pending.push_back(stack(TowerMultiset::from_elements(family.sets.at(v)), expand_words(v, fresh)));
  }
  TowerMultiset last;
  for (const auto& x : ext.s0) last = stack(last, expand_words(next, x));
  ext.pending.push_back(std::move(last));
  ext.used.insert(ext.s0.begin(), ext.s0.end());
  return ext;
}

ExtendOutcome continue_extension(StageExtension& ext, std::uint64_t step_budget) {
  ExtendOutcome out;
  while (!ext.pending.empty()) {
    TowerMultiset& cur = ext.pending.front();
    while (auto y = find_offending_from(cur, ext.used, ext.scan_from)) {
      if (out.steps_taken >= step_budget) {
        out.status = RunStatus::suspended;
        return out;
      }
      ext.scan_from = *y;
      vital_split_in_place(cur, *y);
      ++out.steps_taken;
      ++ext.steps;
    }
    auto elements = cur.support();
    ext.used.insert(elements.begin(), elements.end());
    ext.finalized.push_back(std::move(elements));
    ext.pending.erase(ext.pending.begin());
    ext.scan_from = Nat(0);
  }
  return out;
}

StageFamily finish_extension(const StageExtension& ext, StageAudit* audit_out) {
  if (!ext.pending.empty()) throw Error(Errc::invalid_argument, "extension still has pending sets");
  StageFamily f;
  f.stage = ext.base.stage + 1;
  f.params = ext.base.params;
  f.sets.push_back(ext.s0);
  f.sets.insert(f.sets.end(), ext.finalized.begin(), ext.finalized.end());
  const StageAudit audit = audit_stage(f);
  if (!audit.ok()) {
    std::string msg = "stage " + std::to_string(f.stage) + " failed audit:";
    for (const auto& s : audit.failures) msg += " " + s + ";";
    throw Error(Errc::construction_failure, msg);
  }
  if (audit_out) *audit_out = audit;
  return f;
}

ExtendResult extend_stage(const StageFamily& family, std::uint64_t step_budget) {
  ExtendResult r;
  r.state = begin_extension(family);
  const auto out = continue_extension(r.state, step_budget);
  r.status = out.status;
  if (out.status == RunStatus::complete) r.family = finish_extension(r.state, &r.audit);
  return r;
}

StageGrouping group_stage(const StageFamily& family) {
  StageGrouping g;
  const std::uint64_t kn = family.params.kn().to_u64();
  const std::uint64_t count = family.sets.size();
  std::uint64_t u = 0;
  for (; u + kn <= count; u += kn) {
    GroupApprox ga;
    ga.index = g.groups.size() + 1;
    ga.first_set = u;
    ga.last_set = u + kn - 1;
    for (std::uint64_t j = u; j < u + kn; ++j) {
      ga.elements.insert(ga.elements.end(), family.sets[j].begin(), family.sets[j].end());
    }
    std::sort(ga.elements.begin(), ga.elements.end());
    ga.sigma = reciprocal_sum(ga.elements);
    g.groups.push_back(std::move(ga));
  }
  for (; u < count; ++u) g.ungrouped.push_back(u);
  return g;
}

DyadicRun start_dyadic_run(const Parameters& params) {
  DyadicRun run;
  run.params = make_parameters(params.k, params.n, params.d);
  StageRecord first;
  first.family = init_stage1(run.params);
  first.audit = audit_stage(first.family);
  if (!first.audit.ok()) throw Error(Errc::construction_failure, "stage 1 failed audit");
  run.stages.push_back(std::move(first));
  return run;
}

ExtendOutcome advance_dyadic_run(DyadicRun& run, std::uint32_t stage_count, std::uint64_t step_budget) {
  ExtendOutcome total;
  while (run.stages.size() < stage_count) {
    if (!run.in_flight) run.in_flight = begin_extension(run.stages.back().family);
    const auto out = continue_extension(*run.in_flight, step_budget - total.steps_taken);
    total.steps_taken += out.steps_taken;
    if (out.status == RunStatus::suspended) {
      total.status = RunStatus::suspended;
      return total;
    }
    StageRecord rec;
    rec.family = finish_extension(*run.in_flight, &rec.audit);
    rec.steps = run.in_flight->steps;
    rec.stability_cutoff = prefix_stability_report(run.stages.back().family, rec.family, Nat(0)).family_cutoff;
    run.stages.push_back(std::move(rec));
    run.in_flight.reset();
  }
  return total;
}

}  // namespace egypt
