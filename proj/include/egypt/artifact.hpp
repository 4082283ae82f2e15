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
#include <string>
#include <vector>

#include "egypt/dyadic.hpp"
#include "egypt/star.hpp"
#include "egypt/vital.hpp"

// Line-oriented artifact files (one JSON object per line, first line is a
// versioned header), checksummed checkpoints, and an auditor that recomputes
// every checkable claim in an artifact from its raw elements.

namespace egypt {

inline constexpr int kArtifactVersion = 1;
inline constexpr int kCheckpointVersion = 1;

// ---- artifacts -------------------------------------------------------------

std::string thm1_artifact(const Theorem1State& state, bool with_groups);

std::string thm2_artifact(const Parameters& params, const std::vector<StageRecord>& stages);

struct StarReport {
  Ladder ladder;
  std::vector<std::vector<Nat>> certificates;  // certificates[n-1] for n = 1..depth
  std::vector<bool> divisibility;              // divisibility[m-1] for m = 1..depth
};

StarReport make_star_report(const Nat& x, std::uint32_t depth, const FactorEffort& effort);
std::string star_artifact(const StarReport& report);

// ---- checkpoints -----------------------------------------------------------

/// Run settings persisted alongside engine state so a resume is reproducible.
struct RunManifest {
  std::string command;
  std::uint64_t blocks = 0;  // thm1
  std::uint32_t stages = 0;  // thm2
  bool group = false;
};

struct Thm1Checkpoint {
  RunManifest manifest;
  Theorem1State state;
};

std::string save_thm1_checkpoint(const Thm1Checkpoint& cp);
/// Throws format_error on an unknown version/shape, checksum_error on
/// corrupted payload.
Thm1Checkpoint load_thm1_checkpoint(const std::string& text);

struct Thm2Checkpoint {
  RunManifest manifest;
  DyadicRun run;
};

std::string save_thm2_checkpoint(const Thm2Checkpoint& cp);
Thm2Checkpoint load_thm2_checkpoint(const std::string& text);

/// "thm1" or "thm2" from a checkpoint header, without full validation.
std::string checkpoint_kind(const std::string& text);

// ---- verification ----------------------------------------------------------

struct AuditItem {
  std::string name;
  bool pass = false;
  std::string detail;
};

struct AuditReport {
  std::string kind;
  std::vector<AuditItem> items;

  bool pass() const;
  std::string to_string() const;  // one "PASS|FAIL name: detail" line per item
};

/// Recomputes every invariant an artifact claims. Throws format_error when
/// the text is not a recognized artifact of a supported version.
AuditReport verify_artifact(const std::string& text);

// ---- io --------------------------------------------------------------------

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& contents);

}  // namespace egypt
