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
#include <functional>
#include <optional>
#include <set>
#include <span>
#include <vector>

#include "egypt/arith.hpp"
#include "egypt/towers.hpp"

// Streams pairwise-disjoint finite blocks S_0, S_1, ... that partition
// [kd, inf) with reciprocal sum 1/kd each, by repeatedly splitting the
// smallest offending element of a transitional multiset.

namespace egypt {

struct Parameters {
  Nat k{1};
  Nat n{1};
  Nat d{1};

  Nat kd() const { return k * d; }
  Nat kn() const { return k * n; }
  /// n/d as an exact rational.
  Rat target() const { return Rat(n, d); }
};

/// Validates k, n, d >= 1 and gcd(n, d) = 1.
Parameters make_parameters(const Nat& k, const Nat& n, const Nat& d);

struct Block {
  std::uint64_t index = 0;
  std::vector<Nat> elements;  // strictly ascending
  std::uint64_t steps_used = 0;
  Nat frontier_after;

  const Nat& max_element() const { return elements.back(); }
};

struct Theorem1State {
  Parameters params;
  std::vector<Block> completed;
  std::set<Nat> used;
  TowerMultiset transitional;
  std::uint64_t step_index = 0;  // splits taken toward the block under construction
  std::uint64_t total_steps = 0;
  Nat frontier;  // largest L with [kd, L] inside `used`; kd - 1 when empty
  Nat scan_from;  // lower bound for the next offender; 0 means scan everything

  std::uint64_t block_index() const { return completed.size(); }
};

Theorem1State init_state(const Parameters& params);

/// Smallest y that is either already used (any multiplicity) or fresh with
/// multiplicity >= 2. Empty iff `m` is simple and disjoint from `used`.
std::optional<Nat> find_offending(const TowerMultiset& m, const std::set<Nat>& used);
/// Same, skipping elements below `from`. Splitting y only touches y, y+1 and
/// y(y+1), so within one normalization run the offender never decreases and
/// the previous offender is a valid starting point.
std::optional<Nat> find_offending_from(const TowerMultiset& m, const std::set<Nat>& used, const Nat& from);

enum class SplitCase {
  reclaim,  // y was used by an earlier block; its tower is split to extinction
  thin,     // y is fresh; its tower is split down to a single story
};

struct StepEvent {
  std::uint64_t block_index;
  std::uint64_t step_index;  // 1-based within the block
  Nat split;
  SplitCase split_case;
};

using StepObserver = std::function<void(const StepEvent&, const Theorem1State&)>;

struct EngineOptions {
  /// Re-check the exact sum and the height <= base bound after every split.
  bool check_each_step = false;
  StepObserver observer;
};

/// One split at the smallest offending element. Throws cannot_advance when
/// the transitional multiset is already a valid block.
StepEvent advance(Theorem1State& state, const EngineOptions& options = {});

enum class RunStatus { complete, suspended };

struct NextBlockResult {
  RunStatus status = RunStatus::complete;
  std::optional<Block> block;
  std::uint64_t steps_taken = 0;
};

/// Advances until the transitional multiset is a valid block, then finalizes
/// it. Stops with `suspended` after `step_budget` splits; the state then holds
/// everything needed to continue.
NextBlockResult next_block(Theorem1State& state, std::uint64_t step_budget,
                           const EngineOptions& options = {});

struct RunResult {
  RunStatus status = RunStatus::complete;
  std::uint64_t steps_taken = 0;
};

/// Runs until `state.completed.size() >= block_count` or the budget runs out.
RunResult run_until(Theorem1State& state, std::uint64_t block_count, std::uint64_t step_budget,
                    const EngineOptions& options = {});

struct StreamResult {
  RunStatus status = RunStatus::complete;
  std::vector<Block> blocks;
  Theorem1State state;
};

StreamResult blocks_stream(const Parameters& params, std::uint64_t count, std::uint64_t step_budget);

Nat frontier(std::span<const Block> blocks, const Nat& kd);

struct Group {
  std::uint64_t index = 0;  // 1-based
  std::uint64_t first_block = 0;
  std::uint64_t last_block = 0;
  std::vector<Nat> elements;
  Rat sigma;
};

/// Unions of consecutive runs of kn blocks. Throws incomplete_group when the
/// block count is not a multiple of kn.
std::vector<Group> group_blocks(std::span<const Block> blocks, const Parameters& params);

}  // namespace egypt
