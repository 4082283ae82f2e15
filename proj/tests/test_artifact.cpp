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

#include <sstream>

#include "doctest.h"
#include "egypt/artifact.hpp"
#include "egypt/error.hpp"
#include "json.hpp"

using namespace egypt;
using nlohmann::json;

namespace {

Parameters params(std::uint64_t k, std::uint64_t n, std::uint64_t d) { return make_parameters(Nat(k), Nat(n), Nat(d)); }

std::vector<std::string> lines_of(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  for (std::string l; std::getline(in, l);) out.push_back(l);
  return out;
}

std::string join(const std::vector<std::string>& lines) {
  std::string s;
  for (const auto& l : lines) s += l + "\n";
  return s;
}

// Applies `f` to record `index` (0 = header) of an artifact.
template <typename F>
std::string mutate(const std::string& text, std::size_t index, F f) {
  auto lines = lines_of(text);
  json j = json::parse(lines.at(index));
  f(j);
  lines[index] = j.dump();
  return join(lines);
}

Errc code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an egypt::Error");
  return Errc::invalid_argument;
}

bool item_passes(const AuditReport& r, const std::string& name) {
  for (const auto& i : r.items) {
    if (i.name == name) return i.pass;
  }
  FAIL("no audit item " << name);
  return false;
}

}  // namespace

TEST_SUITE("artifact") {
  TEST_CASE("thm1 artifact layout") {
    auto s = init_state(params(1, 2, 3));
    run_until(s, 4, 1000);
    const auto text = thm1_artifact(s, true);
    const auto lines = lines_of(text);
    REQUIRE(lines.size() == 1 + 4 + 2);
    const json h = json::parse(lines[0]);
    CHECK(h["format"] == "egypt-artifact");
    CHECK(h["version"] == kArtifactVersion);
    CHECK(h["kind"] == "thm1");
    const json b3 = json::parse(lines[4]);
    CHECK(b3["elements"] == json({"6", "14", "21", "30", "157", "182", "420", "24492"}));
    CHECK(b3["sigma"] == "1/3");
    CHECK(json::parse(lines[6])["sigma"] == "2/3");
    CHECK(verify_artifact(text).pass());
  }

  TEST_CASE("verify rejects single-element mutations of blocks") {
    auto s = init_state(params(1, 1, 1));
    run_until(s, 4, 100000);
    const auto text = thm1_artifact(s, false);
    REQUIRE(verify_artifact(text).pass());

    const auto dropped = verify_artifact(mutate(text, 3, [](json& j) { j["elements"].erase(j["elements"].size() - 1); }));
    CHECK_FALSE(dropped.pass());
    CHECK_FALSE(item_passes(dropped, "sigma"));

    const auto bumped = verify_artifact(mutate(text, 4, [](json& j) {
      const auto last = Nat::from_decimal(j["elements"].back().get<std::string>());
      j["elements"].back() = (last + Nat(1)).to_decimal();
    }));
    CHECK_FALSE(item_passes(bumped, "sigma"));

    const auto lied = verify_artifact(mutate(text, 2, [](json& j) { j["frontier"] = "99"; }));
    CHECK_FALSE(item_passes(lied, "frontier"));
  }

  TEST_CASE("thm2 artifact verifies and rejects mutations") {
    auto run = start_dyadic_run(params(1, 1, 2));
    advance_dyadic_run(run, 3, 1'000'000);
    const auto text = thm2_artifact(run.params, run.stages);
    const auto ok = verify_artifact(text);
    CHECK(ok.pass());
    CHECK(ok.kind == "thm2");

    const auto dropped = verify_artifact(mutate(text, 3, [](json& j) { j["sets"][2].erase(0); }));
    CHECK_FALSE(dropped.pass());
    const auto cutoff = verify_artifact(mutate(text, 3, [](json& j) { j["stability_cutoff"] = "1000"; }));
    CHECK_FALSE(item_passes(cutoff, "stability"));
    const auto stored = verify_artifact(mutate(text, 1, [](json& j) { j["sigma"][0] = "1/3"; }));
    CHECK_FALSE(item_passes(stored, "sigma"));
  }

  TEST_CASE("star artifact verifies and rejects a wrong factor") {
    const auto text = star_artifact(make_star_report(Nat(2), 5, {}));
    CHECK(verify_artifact(text).pass());
    const auto bad = verify_artifact(mutate(text, 1, [](json& j) { j["segments"][5]["factors"][0]["p"] = "3263441"; }));
    CHECK_FALSE(item_passes(bad, "products"));
    const auto text3 = star_artifact(make_star_report(Nat(3), 3, {}));
    CHECK(verify_artifact(text3).pass());
  }

  TEST_CASE("unknown artifact versions are format errors") {
    auto s = init_state(params(1, 1, 1));
    run_until(s, 2, 100);
    const auto text = thm1_artifact(s, false);
    CHECK(code_of([&] { verify_artifact(mutate(text, 0, [](json& j) { j["version"] = 99; })); }) ==
          Errc::format_error);
    CHECK(code_of([&] { verify_artifact("not json\n"); }) == Errc::format_error);
    CHECK(code_of([&] { verify_artifact(""); }) == Errc::format_error);
    CHECK(code_of([&] { verify_artifact(mutate(text, 1, [](json& j) { j.erase("elements"); })); }) ==
          Errc::format_error);
  }

  TEST_CASE("thm1 checkpoint roundtrip of a fresh state") {
    Thm1Checkpoint cp{RunManifest{"thm1", 3, 0, false}, init_state(params(1, 1, 1))};
    auto loaded = load_thm1_checkpoint(save_thm1_checkpoint(cp));
    CHECK(loaded.manifest.blocks == 3);
    run_until(cp.state, 3, 1000);
    run_until(loaded.state, 3, 1000);
    CHECK(thm1_artifact(cp.state, false) == thm1_artifact(loaded.state, false));
  }

  TEST_CASE("thm1 checkpoint roundtrip mid-block") {
    Thm1Checkpoint cp{RunManifest{"thm1", 4, 0, false}, init_state(params(1, 1, 1))};
    auto reference = cp.state;
    run_until(reference, 4, 100000);
    REQUIRE(run_until(cp.state, 4, 60).status == RunStatus::suspended);
    const auto text = save_thm1_checkpoint(cp);
    CHECK(save_thm1_checkpoint(load_thm1_checkpoint(text)) == text);
    auto loaded = load_thm1_checkpoint(text);
    CHECK(loaded.state.used == cp.state.used);
    CHECK(loaded.state.frontier == cp.state.frontier);
    run_until(loaded.state, 4, 100000);
    CHECK(thm1_artifact(loaded.state, false) == thm1_artifact(reference, false));
  }

  TEST_CASE("checkpoint corruption") {
    Thm1Checkpoint cp{RunManifest{"thm1", 3, 0, false}, init_state(params(1, 1, 1))};
    run_until(cp.state, 3, 5);
    const auto text = save_thm1_checkpoint(cp);
    json j = json::parse(text);

    json flipped = j;
    flipped["version"] = kCheckpointVersion + 1;
    CHECK(code_of([&] { load_thm1_checkpoint(flipped.dump()); }) == Errc::format_error);

    json tampered = j;
    tampered["payload"]["step_index"] = 0;
    CHECK(code_of([&] { load_thm1_checkpoint(tampered.dump()); }) == Errc::checksum_error);

    std::string byte = text;
    byte[byte.find("\"total_steps\":") + 14] ^= 1;
    CHECK(code_of([&] { load_thm1_checkpoint(byte); }) != Errc::invalid_argument);

    CHECK(code_of([&] { load_thm2_checkpoint(text); }) == Errc::format_error);
    CHECK(code_of([&] { load_thm1_checkpoint("{"); }) == Errc::format_error);
    CHECK(checkpoint_kind(text) == "thm1");
  }

  TEST_CASE("thm2 checkpoint roundtrip mid-extension") {
    Thm2Checkpoint cp{RunManifest{"thm2", 0, 3, false}, start_dyadic_run(params(1, 1, 1))};
    auto reference = cp.run;
    advance_dyadic_run(reference, 3, 1'000'000);
    REQUIRE(advance_dyadic_run(cp.run, 3, 100).status == RunStatus::suspended);
    REQUIRE(cp.run.in_flight);
    const auto text = save_thm2_checkpoint(cp);
    CHECK(checkpoint_kind(text) == "thm2");
    auto loaded = load_thm2_checkpoint(text);
    CHECK(loaded.manifest.stages == 3);
    CHECK(save_thm2_checkpoint(loaded) == text);
    while (advance_dyadic_run(loaded.run, 3, 150).status == RunStatus::suspended) {
      loaded = load_thm2_checkpoint(save_thm2_checkpoint(loaded));
    }
    CHECK(thm2_artifact(loaded.run.params, loaded.run.stages) == thm2_artifact(reference.params, reference.stages));
  }

  TEST_CASE("atomic file writes") {
    const std::string path = "egypt_artifact_test.txt";
    write_file(path, "abc\n");
    CHECK(read_file(path) == "abc\n");
    write_file(path, "de\n");
    CHECK(read_file(path) == "de\n");
    std::remove(path.c_str());
    CHECK(code_of([&] { read_file("/nonexistent/egypt"); }) == Errc::io_error);
  }
}
