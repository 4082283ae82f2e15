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

#include "doctest.h"
#include "egypt/dyadic.hpp"
#include "egypt/error.hpp"
#include "oracle.hpp"

using namespace egypt;

namespace {

Parameters params(std::uint64_t k, std::uint64_t n, std::uint64_t d) { return make_parameters(Nat(k), Nat(n), Nat(d)); }

// Images of x under all 2^v words, enumerated letter by letter.
oracle::Multiset word_images(std::uint32_t v, const oracle::BigInt& x) {
  std::vector<oracle::BigInt> level{x};
  for (std::uint32_t j = 0; j < v; ++j) {
    std::vector<oracle::BigInt> next;
    for (const auto& y : level) {
      next.push_back(y + 1);
      next.push_back(oracle::star(y));
    }
    level = std::move(next);
  }
  oracle::Multiset m;
  for (const auto& y : level) m[y] += 1;
  return m;
}

StageFamily build(const Parameters& p, std::uint32_t stages) {
  StageFamily f = init_stage1(p);
  while (f.stage < stages) {
    auto r = extend_stage(f, 10'000'000);
    REQUIRE(r.status == RunStatus::complete);
    f = *r.family;
  }
  return f;
}

}  // namespace

TEST_SUITE("dyadic") {
  TEST_CASE("word images") {
    CHECK(expand_words(0, Nat(4)).to_string() == "{4}");
    CHECK(expand_words(1, Nat(2)).to_string() == "{3,6}");
    CHECK(expand_words(2, Nat(2)).to_string() == "{4,7,12,42}");
  }

  TEST_CASE("property: word images of x have reciprocal sum 1/x") {
    for (std::uint64_t x = 2; x <= 100; ++x) {
      for (std::uint32_t v = 0; v <= 8; ++v) {
        const auto m = expand_words(v, Nat(x));
        CHECK(sigma_of(m) == Rat::unit(Nat(x)));
        CHECK(m.total_size() == nat_pow(Nat(2), v));
        if (v <= 5) {
          const auto o = word_images(v, x);
          CHECK(oracle::sigma(o) == oracle::BigRat(1, x));
          REQUIRE(o.size() == m.distinct_size());
          for (const auto& [e, h] : m) CHECK(o.at(oracle::big(e)) == oracle::big(h));
        }
      }
    }
  }

  TEST_CASE("stage 1") {
    const auto f = init_stage1(params(1, 1, 1));
    REQUIRE(f.sets.size() == 2);
    CHECK(f.sets[0] == std::vector<Nat>{Nat(2)});
    CHECK(f.sets[1] == std::vector<Nat>{Nat(3), Nat(6)});
    CHECK(audit_stage(f).ok());
    CHECK(stage_sigma_target(1, f.params) == Rat(Nat(1), Nat(2)));
  }

  TEST_CASE("stages for (k,d) = (1,2) pass the audit and the oracle sums") {
    const auto p = params(1, 1, 2);
    StageFamily f = init_stage1(p);
    std::optional<Nat> last_cutoff;
    for (std::uint32_t i = 2; i <= 4; ++i) {
      auto r = extend_stage(f, 1'000'000);
      REQUIRE(r.status == RunStatus::complete);
      const StageFamily& g = *r.family;
      CHECK(g.stage == i);
      CHECK(r.audit.ok());
      CHECK(r.audit.coverage_end >= Nat(4 + i));
      const oracle::BigRat target((oracle::BigInt(1) << i) - 1, oracle::BigInt(1) << (i + 1));
      for (const auto& s : g.sets) CHECK(oracle::reciprocal_sum(oracle::bigs(s)) == target);
      std::set<Nat> all;
      std::size_t total = 0;
      for (const auto& s : g.sets) {
        all.insert(s.begin(), s.end());
        total += s.size();
      }
      CHECK(all.size() == total);
      const auto rep = prefix_stability_report(f, g, Nat(4 + i));
      if (last_cutoff) CHECK(rep.family_cutoff >= *last_cutoff);
      last_cutoff = rep.family_cutoff;
      f = g;
    }
  }

  TEST_CASE("extension suspends and resumes to the same stage") {
    const auto base = build(params(1, 1, 1), 2);
    const auto direct = extend_stage(base, 1'000'000);
    REQUIRE(direct.family);
    auto ext = begin_extension(base);
    int rounds = 0;
    while (continue_extension(ext, 37).status == RunStatus::suspended) ++rounds;
    CHECK(rounds > 0);
    CHECK(finish_extension(ext).sets == direct.family->sets);
  }

  TEST_CASE("dyadic run driver") {
    auto run = start_dyadic_run(params(2, 1, 1));
    std::uint64_t calls = 0;
    while (advance_dyadic_run(run, 4, 50).status == RunStatus::suspended) ++calls;
    CHECK(calls > 0);
    REQUIRE(run.stages.size() == 4);
    CHECK(run.stages[3].family.sets == build(params(2, 1, 1), 4).sets);
    CHECK_FALSE(run.stages[0].stability_cutoff);
    CHECK(run.stages[3].stability_cutoff);
  }

  TEST_CASE("audit catches tampering") {
    auto f = build(params(1, 1, 3), 3);
    REQUIRE(audit_stage(f).ok());
    auto dropped = f;
    dropped.sets[2].pop_back();
    CHECK_FALSE(audit_stage(dropped).ok());
    auto shared = f;
    shared.sets[2].push_back(shared.sets[1].back());
    std::sort(shared.sets[2].begin(), shared.sets[2].end());
    CHECK_FALSE(audit_stage(shared).ok());
    auto moved = f;
    moved.sets[0][0] += Nat(1);
    CHECK_FALSE(audit_stage(moved).ok());
  }

  TEST_CASE("anchor misses are reported for kd = 1") {
    const auto f = build(params(1, 1, 1), 3);
    const auto a = audit_stage(f);
    CHECK(a.ok());
    CHECK(std::find(a.anchor_misses.begin(), a.anchor_misses.end(), 2u) != a.anchor_misses.end());
  }

  TEST_CASE("grouping") {
    const auto f = build(params(1, 3, 2), 3);
    const auto g = group_stage(f);
    REQUIRE(g.groups.size() == 1);
    CHECK(g.groups[0].first_set == 0);
    CHECK(g.groups[0].last_set == 2);
    CHECK(g.ungrouped == std::vector<std::uint64_t>{3});
    CHECK(g.groups[0].sigma == Rat(Nat(21), Nat(16)));
  }

  TEST_CASE("stability report needs consecutive stages") {
    const auto f = build(params(1, 1, 2), 2);
    CHECK_THROWS_AS(prefix_stability_report(f, f, Nat(10)), Error);
  }
}
