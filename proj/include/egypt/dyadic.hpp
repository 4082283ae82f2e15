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

#pragma once

#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "egypt/arith.hpp"
#include "egypt/towers.hpp"
#include "egypt/vital.hpp"

// Finite stages of the partition of [2kd, inf) into infinite sets.
//
// Stage i holds sets S_0 .. S_i. S_0 = {2kd, 4kd, ..., 2^i kd}; every set has
// reciprocal sum (1 - 2^-i)/kd. Going to stage i+1 appends 2^(i+1) kd to S_0,
// stacks the length-u word images of 2^(i+1) kd onto each S_u, opens a new
// set from the length-(i+1) word images of S_0, and then normalizes every
// u >= 1 in order with the same smallest-offender loop the block engine uses.

namespace egypt {

struct StageFamily {
  std::uint32_t stage = 0;
  Parameters params;
  std::vector<std::vector<Nat>> sets;  // sets[u], each strictly ascending
};

/// Multiset {w(x) : w a word of length v over successor/star}. Values that
/// collide are stacked.
TowerMultiset expand_words(std::uint32_t v, const Nat& x);

StageFamily init_stage1(const Parameters& params);

/// (2^i - 1) / (2^i kd)
Rat stage_sigma_target(std::uint32_t i, const Parameters& params);

struct StageAudit {
  bool s0_exact = true;
  bool simple = true;
  bool disjoint = true;
  bool sigma_exact = true;
  bool coverage = true;
  Nat coverage_end;  // largest L with [2kd, L] inside the union of all sets
  /// u in [1, i] with 2kd + u missing from S_u. Reported, not a failure.
  std::vector<std::uint32_t> anchor_misses;
  std::vector<std::string> failures;

  bool ok() const { return failures.empty(); }
};

/// Independent re-check of every stage invariant.
StageAudit audit_stage(const StageFamily& family);

struct StabilityReport {
  Nat cutoff;  // requested cutoff
  std::vector<bool> agrees_at_cutoff;  // per common u
  /// Per common u: largest c with equal prefixes over [2kd, c]; empty when
  /// the two sets are identical.
  std::vector<std::optional<Nat>> per_set_cutoff;
  Nat family_cutoff;  // min over per-set cutoffs
};

StabilityReport prefix_stability_report(const StageFamily& current, const StageFamily& next,
                                        const Nat& cutoff);

/// Resumable in-flight extension from stage i to stage i+1.
struct StageExtension {
  StageFamily base;
  std::vector<Nat> s0;
  std::vector<TowerMultiset> pending;      // candidates for u = finalized.size()+1 ..
  std::vector<std::vector<Nat>> finalized;  // normalized sets for u = 1 ..
  std::set<Nat> used;
  std::uint64_t steps = 0;
  Nat scan_from;  // offender lower bound for pending.front()
};

StageExtension begin_extension(const StageFamily& family);

struct ExtendOutcome {
  RunStatus status = RunStatus::complete;
  std::uint64_t steps_taken = 0;
};

/// Normalizes pending candidates until done or `step_budget` splits.
ExtendOutcome continue_extension(StageExtension& ext, std::uint64_t step_budget);

/// Assembles and audits the finished stage; throws construction_failure with
/// the audit findings if any invariant fails.
StageFamily finish_extension(const StageExtension& ext, StageAudit* audit = nullptr);

struct ExtendResult {
  RunStatus status = RunStatus::complete;
  std::optional<StageFamily> family;  // set when complete
  StageAudit audit;                   // audit of `family` when complete
  StageExtension state;               // resumable state when suspended
};

ExtendResult extend_stage(const StageFamily& family, std::uint64_t step_budget);

struct GroupApprox {
  std::uint64_t index = 0;  // 1-based
  std::uint64_t first_set = 0;
  std::uint64_t last_set = 0;
  std::vector<Nat> elements;
  Rat sigma;
};

struct StageGrouping {
  std::vector<GroupApprox> groups;
  std::vector<std::uint64_t> ungrouped;  // trailing u indices
};

StageGrouping group_stage(const StageFamily& family);

/// One finished stage plus the stability cutoff against its predecessor.
struct StageRecord {
  StageFamily family;
  std::uint64_t steps = 0;
  std::optional<Nat> stability_cutoff;  // empty for stage 1
  StageAudit audit;                     // audit taken when the stage was built
};

/// Stage-by-stage driver that can stop and resume at any split.
struct DyadicRun {
  Parameters params;
  std::vector<StageRecord> stages;
  std::optional<StageExtension> in_flight;
};

DyadicRun start_dyadic_run(const Parameters& params);

/// Extends until `stage_count` stages exist or `step_budget` splits are used.
/// Throws construction_failure if a finished stage fails its audit.
ExtendOutcome advance_dyadic_run(DyadicRun& run, std::uint32_t stage_count, std::uint64_t step_budget);

}  // namespace egypt
