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

#ifndef EGYPT_EGYPT_H_
#define EGYPT_EGYPT_H_

/* C interface to the egypt engines. Integers cross the boundary as decimal
 * strings. Every call returns an egypt_status; on failure a message is
 * available from egypt_last_error() on the same thread. Strings returned
 * through char** outputs are owned by the caller and released with
 * egypt_free_string(). */

#include <stdint.h>

#if defined(EGYPT_BUILDING_LIBRARY)
#define EGYPT_EXPORT __attribute__((visibility("default")))
#else
#define EGYPT_EXPORT
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum egypt_status {
  EGYPT_OK = 0,
  EGYPT_SUSPENDED = 1, /* step budget exhausted; state is resumable */
  EGYPT_ERR_INVALID_ARGUMENT = 2,
  EGYPT_ERR_INVALID_DENOMINATOR = 3,
  EGYPT_ERR_INVALID_PARAMETERS = 4,
  EGYPT_ERR_MISSING_ELEMENT = 5,
  EGYPT_ERR_CANNOT_ADVANCE = 6,
  EGYPT_ERR_INCOMPLETE_GROUP = 7,
  EGYPT_ERR_CERTIFICATE_INVALID = 8,
  EGYPT_ERR_CONSTRUCTION_FAILURE = 9,
  EGYPT_ERR_FORMAT = 10,
  EGYPT_ERR_CHECKSUM = 11,
  EGYPT_ERR_IO = 12,
  EGYPT_ERR_OUT_OF_MEMORY = 13,
  EGYPT_ERR_INTERNAL = 14
} egypt_status;

typedef struct egypt_thm1 egypt_thm1;
typedef struct egypt_thm2 egypt_thm2;

EGYPT_EXPORT const char* egypt_version(void);
EGYPT_EXPORT const char* egypt_status_name(egypt_status status);
/* Message of the last failed call on this thread; "" if none. */
EGYPT_EXPORT const char* egypt_last_error(void);
EGYPT_EXPORT void egypt_free_string(char* s);

/* ---- block partition of [kd, inf) ---------------------------------------- */

/* A run that aims for `blocks` blocks (S_0 counts as one). */
EGYPT_EXPORT egypt_status egypt_thm1_create(const char* k, const char* n, const char* d, uint64_t blocks,
                                            int group, egypt_thm1** out);
EGYPT_EXPORT egypt_status egypt_thm1_load(const char* checkpoint, egypt_thm1** out);
EGYPT_EXPORT void egypt_thm1_destroy(egypt_thm1* h);

EGYPT_EXPORT egypt_status egypt_thm1_set_target(egypt_thm1* h, uint64_t blocks, int group);
EGYPT_EXPORT egypt_status egypt_thm1_target(const egypt_thm1* h, uint64_t* blocks, int* group);
/* Returns EGYPT_OK once the target is reached or EGYPT_SUSPENDED after
 * `step_budget` splits. `steps_taken` may be NULL. */
EGYPT_EXPORT egypt_status egypt_thm1_run(egypt_thm1* h, uint64_t step_budget, uint64_t* steps_taken);
EGYPT_EXPORT egypt_status egypt_thm1_progress(const egypt_thm1* h, uint64_t* blocks_done, uint64_t* total_steps);
EGYPT_EXPORT egypt_status egypt_thm1_artifact(const egypt_thm1* h, char** out);
EGYPT_EXPORT egypt_status egypt_thm1_checkpoint(const egypt_thm1* h, char** out);

/* ---- finite stages of the partition of [2kd, inf) ------------------------ */

EGYPT_EXPORT egypt_status egypt_thm2_create(const char* k, const char* n, const char* d, uint32_t stages,
                                            egypt_thm2** out);
EGYPT_EXPORT egypt_status egypt_thm2_load(const char* checkpoint, egypt_thm2** out);
EGYPT_EXPORT void egypt_thm2_destroy(egypt_thm2* h);

EGYPT_EXPORT egypt_status egypt_thm2_set_target(egypt_thm2* h, uint32_t stages);
EGYPT_EXPORT egypt_status egypt_thm2_target(const egypt_thm2* h, uint32_t* stages);
EGYPT_EXPORT egypt_status egypt_thm2_run(egypt_thm2* h, uint64_t step_budget, uint64_t* steps_taken);
EGYPT_EXPORT egypt_status egypt_thm2_progress(const egypt_thm2* h, uint32_t* stages_done, uint64_t* in_flight_steps);
EGYPT_EXPORT egypt_status egypt_thm2_artifact(const egypt_thm2* h, char** out);
EGYPT_EXPORT egypt_status egypt_thm2_checkpoint(const egypt_thm2* h, char** out);

/* ---- successor/star toolkit ---------------------------------------------- */

/* Ladder of depth `depth` for x plus certificate and divisibility checks for
 * 1..depth. `rho_iterations` of 0 selects the default effort. `artifact` and
 * `summary` may each be NULL; the summary's first line is the ladder text. */
EGYPT_EXPORT egypt_status egypt_star_report(const char* x, uint32_t depth, uint64_t rho_iterations,
                                            char** artifact, char** summary);

/* ---- verification and files ---------------------------------------------- */

/* `passed` receives 1 when every audit item passes. */
EGYPT_EXPORT egypt_status egypt_verify_text(const char* artifact, int* passed, char** report);
EGYPT_EXPORT egypt_status egypt_verify_file(const char* path, int* passed, char** report);

EGYPT_EXPORT egypt_status egypt_read_file(const char* path, char** out);
/* Replaces `path` atomically. */
EGYPT_EXPORT egypt_status egypt_write_file(const char* path, const char* contents);
/* "thm1" or "thm2" for a checkpoint. */
EGYPT_EXPORT egypt_status egypt_checkpoint_kind(const char* checkpoint, char** out);

#ifdef __cplusplus
}
#endif

#endif /* EGYPT_EGYPT_H_ */
