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

#include "egypt/egypt.h"

#include <cstdlib>
#include <cstring>
#include <memory>
#include <new>
#include <string>

#include "egypt/artifact.hpp"
#include "egypt/error.hpp"

struct egypt_thm1 {
  egypt::Thm1Checkpoint cp;
};

struct egypt_thm2 {
  egypt::Thm2Checkpoint cp;
};

namespace {

thread_local std::string g_last_error;

egypt_status to_status(egypt::Errc c) {
  using egypt::Errc;
  switch (c) {
    case Errc::invalid_argument: return EGYPT_ERR_INVALID_ARGUMENT;
    case Errc::invalid_denominator: return EGYPT_ERR_INVALID_DENOMINATOR;
    case Errc::invalid_parameters: return EGYPT_ERR_INVALID_PARAMETERS;
    case Errc::missing_element: return EGYPT_ERR_MISSING_ELEMENT;
    case Errc::cannot_advance: return EGYPT_ERR_CANNOT_ADVANCE;
    case Errc::incomplete_group: return EGYPT_ERR_INCOMPLETE_GROUP;
    case Errc::certificate_invalid: return EGYPT_ERR_CERTIFICATE_INVALID;
    case Errc::construction_failure: return EGYPT_ERR_CONSTRUCTION_FAILURE;
    case Errc::format_error: return EGYPT_ERR_FORMAT;
    case Errc::checksum_error: return EGYPT_ERR_CHECKSUM;
    case Errc::io_error: return EGYPT_ERR_IO;
  }
  return EGYPT_ERR_INTERNAL;
}

egypt_status fail(egypt_status s, std::string msg) {
  g_last_error = std::move(msg);
  return s;
}

template <typename F>
egypt_status guard(F&& f) {
  try {
    g_last_error.clear();
    return f();
  } catch (const egypt::Error& e) {
    return fail(to_status(e.code()), e.what());
  } catch (const std::bad_alloc&) {
    return fail(EGYPT_ERR_OUT_OF_MEMORY, "out of memory");
  } catch (const std::exception& e) {
    return fail(EGYPT_ERR_INTERNAL, e.what());
  } catch (...) {
    return fail(EGYPT_ERR_INTERNAL, "unknown exception");
  }
}

char* dup(const std::string& s) {
  char* p = static_cast<char*>(std::malloc(s.size() + 1));
  if (!p) throw std::bad_alloc();
  std::memcpy(p, s.c_str(), s.size() + 1);
  return p;
}

void need(const void* p, const char* what) {
  if (!p) throw egypt::Error(egypt::Errc::invalid_argument, std::string(what) + " is NULL");
}

egypt::Parameters parse_params(const char* k, const char* n, const char* d) {
  need(k, "k");
  need(n, "n");
  need(d, "d");
  return egypt::make_parameters(egypt::Nat::from_decimal(k), egypt::Nat::from_decimal(n),
                                egypt::Nat::from_decimal(d));
}

void report_audit(const egypt::AuditReport& r, int* passed, char** report) {
  if (passed) *passed = r.pass() ? 1 : 0;
  if (report) *report = dup(r.to_string());
}

}  // namespace

extern "C" {

const char* egypt_version(void) { return "1.0.0"; }

const char* egypt_status_name(egypt_status s) {
  switch (s) {
    case EGYPT_OK: return "ok";
    case EGYPT_SUSPENDED: return "suspended";
    case EGYPT_ERR_INVALID_ARGUMENT: return "invalid_argument";
    case EGYPT_ERR_INVALID_DENOMINATOR: return "invalid_denominator";
    case EGYPT_ERR_INVALID_PARAMETERS: return "invalid_parameters";
    case EGYPT_ERR_MISSING_ELEMENT: return "missing_element";
    case EGYPT_ERR_CANNOT_ADVANCE: return "cannot_advance";
    case EGYPT_ERR_INCOMPLETE_GROUP: return "incomplete_group";
    case EGYPT_ERR_CERTIFICATE_INVALID: return "certificate_invalid";
    case EGYPT_ERR_CONSTRUCTION_FAILURE: return "construction_failure";
    case EGYPT_ERR_FORMAT: return "format_error";
    case EGYPT_ERR_CHECKSUM: return "checksum_error";
    case EGYPT_ERR_IO: return "io_error";
    case EGYPT_ERR_OUT_OF_MEMORY: return "out_of_memory";
    case EGYPT_ERR_INTERNAL: return "internal_error";
  }
  return "unknown";
}

const char* egypt_last_error(void) { return g_last_error.c_str(); }

void egypt_free_string(char* s) { std::free(s); }

// ---- thm1 -------------------------------------------------------------------

egypt_status egypt_thm1_create(const char* k, const char* n, const char* d, uint64_t blocks, int group,
                               egypt_thm1** out) {
  return guard([&] {
    need(out, "out");
    if (blocks == 0) throw egypt::Error(egypt::Errc::invalid_argument, "blocks must be >= 1");
    auto h = std::make_unique<egypt_thm1>();
    h->cp.state = egypt::init_state(parse_params(k, n, d));
    h->cp.manifest = egypt::RunManifest{"thm1", blocks, 0, group != 0};
    *out = h.release();
    return EGYPT_OK;
  });
}

egypt_status egypt_thm1_load(const char* checkpoint, egypt_thm1** out) {
  return guard([&] {
    need(checkpoint, "checkpoint");
    need(out, "out");
    auto h = std::make_unique<egypt_thm1>();
    h->cp = egypt::load_thm1_checkpoint(checkpoint);
    *out = h.release();
    return EGYPT_OK;
  });
}

void egypt_thm1_destroy(egypt_thm1* h) { delete h; }

egypt_status egypt_thm1_set_target(egypt_thm1* h, uint64_t blocks, int group) {
  return guard([&] {
    need(h, "handle");
    if (blocks == 0) throw egypt::Error(egypt::Errc::invalid_argument, "blocks must be >= 1");
    h->cp.manifest.blocks = blocks;
    h->cp.manifest.group = group != 0;
    return EGYPT_OK;
  });
}

egypt_status egypt_thm1_target(const egypt_thm1* h, uint64_t* blocks, int* group) {
  return guard([&] {
    need(h, "handle");
    if (blocks) *blocks = h->cp.manifest.blocks;
    if (group) *group = h->cp.manifest.group ? 1 : 0;
    return EGYPT_OK;
  });
}

egypt_status egypt_thm1_run(egypt_thm1* h, uint64_t step_budget, uint64_t* steps_taken) {
  return guard([&] {
    need(h, "handle");
    const auto r = egypt::run_until(h->cp.state, h->cp.manifest.blocks, step_budget);
    if (steps_taken) *steps_taken = r.steps_taken;
    return r.status == egypt::RunStatus::complete ? EGYPT_OK : EGYPT_SUSPENDED;
  });
}

egypt_status egypt_thm1_progress(const egypt_thm1* h, uint64_t* blocks_done, uint64_t* total_steps) {
  return guard([&] {
    need(h, "handle");
    if (blocks_done) *blocks_done = h->cp.state.completed.size();
    if (total_steps) *total_steps = h->cp.state.total_steps;
    return EGYPT_OK;
  });
}

egypt_status egypt_thm1_artifact(const egypt_thm1* h, char** out) {
  return guard([&] {
    need(h, "handle");
    need(out, "out");
    *out = dup(egypt::thm1_artifact(h->cp.state, h->cp.manifest.group));
    return EGYPT_OK;
  });
}

egypt_status egypt_thm1_checkpoint(const egypt_thm1* h, char** out) {
  return guard([&] {
    need(h, "handle");
    need(out, "out");
    *out = dup(egypt::save_thm1_checkpoint(h->cp));
    return EGYPT_OK;
  });
}

// ---- thm2 -------------------------------------------------------------------

egypt_status egypt_thm2_create(const char* k, const char* n, const char* d, uint32_t stages, egypt_thm2** out) {
  return guard([&] {
    need(out, "out");
    if (stages == 0) throw egypt::Error(egypt::Errc::invalid_argument, "stages must be >= 1");
    auto h = std::make_unique<egypt_thm2>();
    h->cp.run = egypt::start_dyadic_run(parse_params(k, n, d));
    h->cp.manifest = egypt::RunManifest{"thm2", 0, stages, false};
    *out = h.release();
    return EGYPT_OK;
  });
}

egypt_status egypt_thm2_load(const char* checkpoint, egypt_thm2** out) {
  return guard([&] {
    need(checkpoint, "checkpoint");
    need(out, "out");
    auto h = std::make_unique<egypt_thm2>();
    h->cp = egypt::load_thm2_checkpoint(checkpoint);
    *out = h.release();
    return EGYPT_OK;
  });
}

void egypt_thm2_destroy(egypt_thm2* h) { delete h; }

egypt_status egypt_thm2_set_target(egypt_thm2* h, uint32_t stages) {
  return guard([&] {
    need(h, "handle");
    if (stages == 0) throw egypt::Error(egypt::Errc::invalid_argument, "stages must be >= 1");
    h->cp.manifest.stages = stages;
    return EGYPT_OK;
  });
}

egypt_status egypt_thm2_target(const egypt_thm2* h, uint32_t* stages) {
  return guard([&] {
    need(h, "handle");
    if (stages) *stages = h->cp.manifest.stages;
    return EGYPT_OK;
  });
}

egypt_status egypt_thm2_run(egypt_thm2* h, uint64_t step_budget, uint64_t* steps_taken) {
  return guard([&] {
    need(h, "handle");
    const auto r = egypt::advance_dyadic_run(h->cp.run, h->cp.manifest.stages, step_budget);
    if (steps_taken) *steps_taken = r.steps_taken;
    return r.status == egypt::RunStatus::complete ? EGYPT_OK : EGYPT_SUSPENDED;
  });
}

egypt_status egypt_thm2_progress(const egypt_thm2* h, uint32_t* stages_done, uint64_t* in_flight_steps) {
  return guard([&] {
    need(h, "handle");
    if (stages_done) *stages_done = static_cast<uint32_t>(h->cp.run.stages.size());
    if (in_flight_steps) *in_flight_steps = h->cp.run.in_flight ? h->cp.run.in_flight->steps : 0;
    return EGYPT_OK;
  });
}

egypt_status egypt_thm2_artifact(const egypt_thm2* h, char** out) {
  return guard([&] {
    need(h, "handle");
    need(out, "out");
    *out = dup(egypt::thm2_artifact(h->cp.run.params, h->cp.run.stages));
    return EGYPT_OK;
  });
}

egypt_status egypt_thm2_checkpoint(const egypt_thm2* h, char** out) {
  return guard([&] {
    need(h, "handle");
    need(out, "out");
    *out = dup(egypt::save_thm2_checkpoint(h->cp));
    return EGYPT_OK;
  });
}

// ---- star -------------------------------------------------------------------

egypt_status egypt_star_report(const char* x, uint32_t depth, uint64_t rho_iterations, char** artifact,
                               char** summary) {
  return guard([&] {
    need(x, "x");
    const egypt::Nat seed = egypt::Nat::from_decimal(x);
    if (seed.is_zero()) throw egypt::Error(egypt::Errc::invalid_argument, "x must be >= 1");
    egypt::FactorEffort effort;
    if (rho_iterations) effort.rho_iterations = rho_iterations;
    const auto report = egypt::make_star_report(seed, depth, effort);
    if (summary) {
      std::string s = egypt::format_ladder(report.ladder) + "\n";
      for (std::size_t j = 0; j < report.ladder.segments.size(); ++j) {
        if (!report.ladder.segments[j].complete()) s += "segment " + std::to_string(j) + ": partial\n";
      }
      for (std::size_t i = 0; i < report.certificates.size(); ++i) {
        s += "certificate n=" + std::to_string(i + 1) + ": ok\n";
      }
      for (std::size_t i = 0; i < report.divisibility.size(); ++i) {
        s += "divisibility m=" + std::to_string(i + 1) + ": " + (report.divisibility[i] ? "ok" : "FAIL") + "\n";
      }
      *summary = dup(s);
    }
    if (artifact) *artifact = dup(egypt::star_artifact(report));
    return EGYPT_OK;
  });
}

// ---- verification and files -------------------------------------------------

egypt_status egypt_verify_text(const char* artifact, int* passed, char** report) {
  return guard([&] {
    need(artifact, "artifact");
    report_audit(egypt::verify_artifact(artifact), passed, report);
    return EGYPT_OK;
  });
}

egypt_status egypt_verify_file(const char* path, int* passed, char** report) {
  return guard([&] {
    need(path, "path");
    report_audit(egypt::verify_artifact(egypt::read_file(path)), passed, report);
    return EGYPT_OK;
  });
}

egypt_status egypt_read_file(const char* path, char** out) {
  return guard([&] {
    need(path, "path");
    need(out, "out");
    *out = dup(egypt::read_file(path));
    return EGYPT_OK;
  });
}

egypt_status egypt_write_file(const char* path, const char* contents) {
  return guard([&] {
    need(path, "path");
    need(contents, "contents");
    egypt::write_file(path, contents);
    return EGYPT_OK;
  });
}

egypt_status egypt_checkpoint_kind(const char* checkpoint, char** out) {
  return guard([&] {
    need(checkpoint, "checkpoint");
    need(out, "out");
    *out = dup(egypt::checkpoint_kind(checkpoint));
    return EGYPT_OK;
  });
}

}  // extern "C"
