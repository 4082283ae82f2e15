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

#include <cstdint>
#include <cstdio>
#include <iostream>
#include <memory>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "egypt/egypt.h"

namespace {

enum Exit : int {
  kOk = 0,
  kVerifyFailed = 1,
  kUsage = 2,
  kSuspended = 3,
  kError = 4,
};

struct CString {
  char* p = nullptr;
  ~CString() { egypt_free_string(p); }
  std::string str() const { return p ? p : ""; }
};

int report(egypt_status s, const std::string& what) {
  std::cerr << "egypt: " << what << ": " << egypt_status_name(s) << ": " << egypt_last_error() << "\n";
  switch (s) {
    case EGYPT_ERR_INVALID_ARGUMENT:
    case EGYPT_ERR_INVALID_PARAMETERS:
      return kUsage;
    default:
      return kError;
  }
}

// Errors while parsing user-supplied parameters are usage errors.
int report_usage(egypt_status s, const std::string& what) {
  const int code = report(s, what);
  return s == EGYPT_ERR_FORMAT ? kUsage : code;
}

int emit(const std::string& text, const std::string& out) {
  if (out.empty()) {
    std::cout << text;
    return kOk;
  }
  const egypt_status s = egypt_write_file(out.c_str(), text.c_str());
  return s == EGYPT_OK ? kOk : report(s, "writing " + out);
}

std::string read_checkpoint(const std::string& path, int& code) {
  CString text;
  const egypt_status s = egypt_read_file(path.c_str(), &text.p);
  code = s == EGYPT_OK ? kOk : report(s, "reading " + path);
  return text.str();
}

struct EngineFlags {
  std::string k = "1", n = "1", d = "1";
  std::uint64_t step_budget = 10'000'000;
  std::string checkpoint;
  bool resume = false;
  std::string out;
};

void add_engine_flags(CLI::App* cmd, EngineFlags& f) {
  cmd->add_option("--k", f.k, "Parameter k >= 1")->capture_default_str();
  cmd->add_option("--n", f.n, "Numerator n >= 1")->capture_default_str();
  cmd->add_option("--d", f.d, "Denominator d >= 1, coprime to n")->capture_default_str();
  cmd->add_option("--step-budget", f.step_budget, "Splits allowed in this invocation")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  cmd->add_option("--checkpoint", f.checkpoint, "Checkpoint file written on suspension and completion");
  cmd->add_flag("--resume", f.resume, "Continue from --checkpoint");
  cmd->add_option("--out", f.out, "Artifact path (default: stdout)");
}

// Shared driver for both engines: run, persist state, emit the artifact.
template <typename Handle, typename Run, typename Checkpoint, typename Artifact, typename Progress>
int drive(Handle* h, const EngineFlags& f, Run run, Checkpoint checkpoint, Artifact artifact, Progress progress) {
  std::uint64_t steps = 0;
  const egypt_status rs = run(h, f.step_budget, &steps);
  if (rs != EGYPT_OK && rs != EGYPT_SUSPENDED) return report(rs, "run");
  if (!f.checkpoint.empty()) {
    CString cp;
    egypt_status s = checkpoint(h, &cp.p);
    if (s == EGYPT_OK) s = egypt_write_file(f.checkpoint.c_str(), cp.p);
    if (s != EGYPT_OK) return report(s, "writing checkpoint");
  }
  std::cerr << "egypt: " << progress(h) << ", " << steps << " splits this run\n";
  if (rs == EGYPT_SUSPENDED) {
    std::cerr << "egypt: suspended at step budget"
              << (f.checkpoint.empty() ? " (no --checkpoint given, progress discarded)" : "") << "\n";
    return kSuspended;
  }
  CString text;
  const egypt_status as = artifact(h, &text.p);
  if (as != EGYPT_OK) return report(as, "artifact");
  return emit(text.str(), f.out);
}

int run_thm1(const EngineFlags& f, std::uint64_t blocks, bool blocks_given, bool group) {
  egypt_thm1* raw = nullptr;
  if (f.resume) {
    int code = kOk;
    const std::string text = read_checkpoint(f.checkpoint, code);
    if (code != kOk) return code;
    const egypt_status s = egypt_thm1_load(text.c_str(), &raw);
    if (s != EGYPT_OK) return report(s, "loading checkpoint");
  } else {
    const egypt_status s = egypt_thm1_create(f.k.c_str(), f.n.c_str(), f.d.c_str(), blocks, group, &raw);
    if (s != EGYPT_OK) return report_usage(s, "thm1");
  }
  std::unique_ptr<egypt_thm1, decltype(&egypt_thm1_destroy)> h(raw, egypt_thm1_destroy);
  if (f.resume && (blocks_given || group)) {
    std::uint64_t cur = 0;
    int cur_group = 0;
    egypt_thm1_target(h.get(), &cur, &cur_group);
    const egypt_status s = egypt_thm1_set_target(h.get(), blocks_given ? blocks : cur, group || cur_group);
    if (s != EGYPT_OK) return report(s, "thm1");
  }
  return drive(h.get(), f, egypt_thm1_run, egypt_thm1_checkpoint, egypt_thm1_artifact, [](egypt_thm1* p) {
    std::uint64_t done = 0, total = 0;
    egypt_thm1_progress(p, &done, &total);
    return std::to_string(done) + " blocks, " + std::to_string(total) + " splits in total";
  });
}

int run_thm2(const EngineFlags& f, std::uint32_t stages, bool stages_given) {
  egypt_thm2* raw = nullptr;
  if (f.resume) {
    int code = kOk;
    const std::string text = read_checkpoint(f.checkpoint, code);
    if (code != kOk) return code;
    const egypt_status s = egypt_thm2_load(text.c_str(), &raw);
    if (s != EGYPT_OK) return report(s, "loading checkpoint");
  } else {
    const egypt_status s = egypt_thm2_create(f.k.c_str(), f.n.c_str(), f.d.c_str(), stages, &raw);
    if (s != EGYPT_OK) return report_usage(s, "thm2");
  }
  std::unique_ptr<egypt_thm2, decltype(&egypt_thm2_destroy)> h(raw, egypt_thm2_destroy);
  if (f.resume && stages_given) {
    const egypt_status s = egypt_thm2_set_target(h.get(), stages);
    if (s != EGYPT_OK) return report(s, "thm2");
  }
  return drive(h.get(), f, egypt_thm2_run, egypt_thm2_checkpoint, egypt_thm2_artifact, [](egypt_thm2* p) {
    std::uint32_t done = 0;
    std::uint64_t pending = 0;
    egypt_thm2_progress(p, &done, &pending);
    return std::to_string(done) + " stages, " + std::to_string(pending) + " splits into the next";
  });
}

int run_star(const std::string& x, std::uint32_t depth, std::uint64_t effort, const std::string& out) {
  CString artifact, summary;
  const egypt_status s =
      egypt_star_report(x.c_str(), depth, effort, out.empty() ? nullptr : &artifact.p, &summary.p);
  if (s != EGYPT_OK) return report_usage(s, "star");
  std::cout << summary.str();
  return out.empty() ? kOk : emit(artifact.str(), out);
}

int run_verify(const std::vector<std::string>& paths) {
  int code = kOk;
  for (const auto& path : paths) {
    int passed = 0;
    CString text;
    const egypt_status s = egypt_verify_file(path.c_str(), &passed, &text.p);
    if (s != EGYPT_OK) return report(s, "verifying " + path);
    std::cout << path << ": " << (passed ? "PASS" : "FAIL") << "\n" << text.str();
    if (!passed) code = kVerifyFailed;
  }
  return code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact Egyptian-fraction partitions of integer tails"};
  app.set_version_flag("--version", egypt_version());
  app.require_subcommand(1);

  EngineFlags f1;
  std::uint64_t blocks = 0;
  bool group = false;
  auto* thm1 = app.add_subcommand("thm1", "Stream blocks of the partition of [kd, inf)");
  add_engine_flags(thm1, f1);
  auto* blocks_opt = thm1->add_option("--blocks", blocks, "Number of blocks, S_0 included")->check(CLI::PositiveNumber);
  thm1->add_flag("--group", group, "Also emit unions of kn consecutive blocks");

  EngineFlags f2;
  std::uint32_t stages = 0;
  auto* thm2 = app.add_subcommand("thm2", "Build finite stages of the partition of [2kd, inf)");
  add_engine_flags(thm2, f2);
  auto* stages_opt = thm2->add_option("--stages", stages, "Number of stages");

  std::string x = "2";
  std::uint32_t depth = 5;
  std::uint64_t effort = 0;
  std::string star_out;
  auto* star = app.add_subcommand("star", "Factorization ladder and star-chain certificates");
  star->add_option("--x", x, "Seed x >= 1")->capture_default_str();
  star->add_option("--depth", depth, "Ladder depth")->capture_default_str();
  star->add_option("--effort", effort, "Pollard rho iteration budget per ladder (0 = default)");
  star->add_option("--out", star_out, "Artifact path");

  std::vector<std::string> paths;
  auto* verify = app.add_subcommand("verify", "Audit artifact files");
  verify->add_option("paths", paths, "Artifact files")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  auto usage = [](const std::string& msg) {
    std::cerr << "egypt: " << msg << "\n";
    return kUsage;
  };

  if (thm1->parsed()) {
    if (f1.resume && f1.checkpoint.empty()) return usage("--resume needs --checkpoint");
    if (!f1.resume && blocks_opt->count() == 0) return usage("--blocks is required");
    return run_thm1(f1, blocks, blocks_opt->count() != 0, group);
  }
  if (thm2->parsed()) {
    if (f2.resume && f2.checkpoint.empty()) return usage("--resume needs --checkpoint");
    if (!f2.resume && stages_opt->count() == 0) return usage("--stages is required");
    if (stages_opt->count() != 0 && stages == 0) return usage("--stages must be >= 1");
    return run_thm2(f2, stages, stages_opt->count() != 0);
  }
  if (star->parsed()) return run_star(x, depth, effort, star_out);
  return run_verify(paths);
}
