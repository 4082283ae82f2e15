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

#include "egypt/vital.hpp"

#include <algorithm>
#include <string>

#include "egypt/error.hpp"

namespace egypt {

Parameters make_parameters(const Nat& k, const Nat& n, const Nat& d) {
  if (k.is_zero() || n.is_zero() || d.is_zero()) {
    throw Error(Errc::invalid_parameters, "k, n and d must be positive");
  }
  if (!nat_gcd(n, d).is_one()) {
    throw Error(Errc::invalid_parameters,
                "n and d must be coprime (gcd(" + n.to_decimal() + "," + d.to_decimal() + ") != 1)");
  }
  return Parameters{k, n, d};
}

Theorem1State init_state(const Parameters& params) {
  const Parameters p = make_parameters(params.k, params.n, params.d);
  Theorem1State s;
  s.params = p;
  s.transitional.add(p.kd());
  s.frontier = p.kd() - Nat(1);
  return s;
}

std::optional<Nat> find_offending(const TowerMultiset& m, const std::set<Nat>& used) {
  return find_offending_from(m, used, Nat(0));
}

std::optional<Nat> find_offending_from(const TowerMultiset& m, const std::set<Nat>& used, const Nat& from) {
  for (auto it = m.towers().lower_bound(from); it != m.end(); ++it) {
    if (!it->second.is_one() || used.count(it->first) != 0) return it->first;
  }
  return std::nullopt;
}

namespace {

void check_step_invariants(const Theorem1State& state) {
  std::vector<UnitTerm> terms;
  terms.reserve(state.transitional.distinct_size());
  for (const auto& [y, height] : state.transitional) terms.push_back({&y, &height});
  if (!unit_terms_equal(terms, Rat::unit(state.params.kd()))) {
    throw Error(Errc::construction_failure,
                "reciprocal sum drifted at block " + std::to_string(state.block_index()) +
                    " step " + std::to_string(state.step_index));
  }
  for (const auto& [y, height] : state.transitional) {
    if (height > y) {
      throw Error(Errc::construction_failure,
                  "tower " + y.to_decimal() + "^" + height.to_decimal() + " exceeds its base");
    }
  }
}

}  // namespace

StepEvent advance(Theorem1State& state, const EngineOptions& options) {
  auto y = find_offending_from(state.transitional, state.used, state.scan_from);
  if (!y) {
    throw Error(Errc::cannot_advance,
                "block " + std::to_string(state.block_index()) + " is complete; finalize it instead");
  }
  const SplitCase split_case = state.used.count(*y) != 0 ? SplitCase::reclaim : SplitCase::thin;
  state.scan_from = *y;
  vital_split_in_place(state.transitional, *y);
  ++state.step_index;
  ++state.total_steps;
  StepEvent ev{state.block_index(), state.step_index, std::move(*y), split_case};
  if (options.check_each_step) check_step_invariants(state);
  if (options.observer) options.observer(ev, state);
  return ev;
}

namespace {

Block finalize_block(Theorem1State& state) {
  Block b;
  b.index = state.block_index();
  b.elements = state.transitional.support();
  b.steps_used = state.step_index;
  for (const auto& e : b.elements) state.used.insert(e);
  while (state.used.count(state.frontier + Nat(1)) != 0) ++state.frontier;
  b.frontier_after = state.frontier;
  state.completed.push_back(b);
  state.step_index = 0;
  state.scan_from = Nat(0);
  // The finalized block seeds the next transitional multiset unchanged.
  return b;
}

}  // namespace

NextBlockResult next_block(Theorem1State& state, std::uint64_t step_budget,
                           const EngineOptions& options) {
  NextBlockResult r;
  while (find_offending_from(state.transitional, state.used, state.scan_from)) {
    if (r.steps_taken >= step_budget) {
      r.status = RunStatus::suspended;
      return r;
    }
    advance(state, options);
    ++r.steps_taken;
  }
  r.block = finalize_block(state);
  return r;
}

RunResult run_until(Theorem1State& state, std::uint64_t block_count, std::uint64_t step_budget,
                    const EngineOptions& options) {
  RunResult r;
  while (state.completed.size() < block_count) {
    auto nb = next_block(state, step_budget - r.steps_taken, options);
    r.steps_taken += nb.steps_taken;
    if (nb.status == RunStatus::suspended) {
      r.status = RunStatus::suspended;
      return r;
    }
  }
  return r;
}

StreamResult blocks_stream(const Parameters& params, std::uint64_t count, std::uint64_t step_budget) {
  if (count == 0) throw Error(Errc::invalid_argument, "block count must be >= 1");
  StreamResult out;
  out.state = init_state(params);
  out.status = run_until(out.state, count, step_budget).status;
  out.blocks = out.state.completed;
  return out;
}

Nat frontier(std::span<const Block> blocks, const Nat& kd) {
  std::set<Nat> all;
  for (const auto& b : blocks) all.insert(b.elements.begin(), b.elements.end());
  Nat f = kd - Nat(1);
  while (all.count(f + Nat(1)) != 0) ++f;
  return f;
}

std::vector<Group> group_blocks(std::span<const Block> blocks, const Parameters& params) {
  const Nat kn = params.kn();
  const Nat count(static_cast<std::uint64_t>(blocks.size()));
  const Nat rem = count % kn;
  if (!rem.is_zero()) {
    throw Error(Errc::incomplete_group, std::to_string(blocks.size()) + " blocks do not split into groups of " +
                                            kn.to_decimal() + "; remainder " + rem.to_decimal());
  }
  const std::uint64_t size = kn.to_u64();
  std::vector<Group> groups;
  for (std::uint64_t start = 0; start < blocks.size(); start += size) {
    Group g;
    g.index = groups.size() + 1;
    g.first_block = start;
    g.last_block = start + size - 1;
    for (std::uint64_t i = start; i < start + size; ++i) {
      g.elements.insert(g.elements.end(), blocks[i].elements.begin(), blocks[i].elements.end());
    }
    std::sort(g.elements.begin(), g.elements.end());
    g.sigma = reciprocal_sum(g.elements);
    groups.push_back(std::move(g));
  }
  return groups;
}

}  // namespace egypt
