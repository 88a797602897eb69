// Copyright 2026 The steerbox Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef STEERBOX_H_
#define STEERBOX_H_

#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

#if defined(_WIN32)
#define STEERBOX_API __declspec(dllexport)
#else
#define STEERBOX_API __attribute__((visibility("default")))
#endif

typedef struct steerbox_box steerbox_box;
typedef struct steerbox_state steerbox_state;

typedef enum {
    STEERBOX_OK = 0,
    STEERBOX_E_INVALID_ARGUMENT = 1,
    STEERBOX_E_PARSE = 2,
    STEERBOX_E_INVALID_BOX = 3,
    STEERBOX_E_SIGNALING = 4,
    STEERBOX_E_INVALID_STATE = 5,
    STEERBOX_E_RANGE = 6,
    STEERBOX_E_NONLOCAL = 7,
    STEERBOX_E_NON_RATIONAL = 8,
    STEERBOX_E_CONFIG = 9,
    STEERBOX_E_IO = 10,
    STEERBOX_E_INTERNAL = 11
} steerbox_status;

typedef enum { STEERBOX_ALICE = 0, STEERBOX_BOB = 1 } steerbox_party;
typedef enum { STEERBOX_A_TO_B = 0, STEERBOX_B_TO_A = 1 } steerbox_direction;
typedef enum { STEERBOX_TRUSTED_UNCONSTRAINED = 0, STEERBOX_TRUSTED_QUBIT_MUB = 1 } steerbox_trusted_kind;

typedef struct {
    int starts;
    uint64_t seed;
    double residual_threshold;
    double feasible_residual;
    int threads;
} steerbox_config;

STEERBOX_API const char *steerbox_version(void);
STEERBOX_API const char *steerbox_status_name(steerbox_status status);
/* Message of the last failing call on this thread; never NULL. */
STEERBOX_API const char *steerbox_last_error(void);
STEERBOX_API void steerbox_string_free(char *s);

STEERBOX_API void steerbox_config_default(steerbox_config *cfg);

STEERBOX_API steerbox_status steerbox_box_from_json(const char *json, steerbox_box **out);
STEERBOX_API steerbox_status steerbox_box_load(const char *path, steerbox_box **out);
STEERBOX_API steerbox_status steerbox_box_save(const steerbox_box *box, const char *path);
STEERBOX_API steerbox_status steerbox_box_to_json(const steerbox_box *box, char **out);
/* name: "chsh", "bb84" (visibility v), "one-way-discord", "uniform", "pr". */
STEERBOX_API steerbox_status steerbox_box_family(const char *name, double v, steerbox_box **out);
STEERBOX_API steerbox_status steerbox_box_as_float(const steerbox_box *box, steerbox_box **out);
STEERBOX_API steerbox_status steerbox_box_entry(const steerbox_box *box, int x, int y, int a, int b, double *out);
STEERBOX_API steerbox_status steerbox_box_is_exact(const steerbox_box *box, int *out);
STEERBOX_API steerbox_status steerbox_box_is_nosignaling(const steerbox_box *box, int *out);
STEERBOX_API steerbox_status steerbox_box_chsh_max(const steerbox_box *box, double *out);
STEERBOX_API void steerbox_box_free(steerbox_box *box);

/* Classification report as JSON and plain text; either output may be NULL. */
STEERBOX_API steerbox_status steerbox_analyze(const steerbox_box *box, int d_a, int d_b, const steerbox_config *cfg,
                                              char **report_json, char **report_text);
STEERBOX_API steerbox_status steerbox_restricted_feasibility(const steerbox_box *box, int d,
                                                             steerbox_party untrusted,
                                                             steerbox_trusted_kind kind,
                                                             const steerbox_config *cfg, char **result_json);

STEERBOX_API steerbox_status steerbox_state_from_json(const char *json, steerbox_state **out);
STEERBOX_API steerbox_status steerbox_state_load(const char *path, steerbox_state **out);
/* name: "one-way-discord", "maximally-mixed", "product-zz". */
STEERBOX_API steerbox_status steerbox_state_named(const char *name, steerbox_state **out);
STEERBOX_API void steerbox_state_free(steerbox_state *state);

STEERBOX_API steerbox_status steerbox_discord(const steerbox_state *state, steerbox_direction direction,
                                              double *value, char **report_json);

/* Runs every claim; writes report.json and report.txt to out_dir when it is
   not NULL. *all_pass is 1 when no claim fails or stays inconclusive. */
STEERBOX_API steerbox_status steerbox_reproduce(const steerbox_config *cfg, int printed_tables, const char *out_dir,
                                                int *all_pass, char **report_text);

#ifdef __cplusplus
}
#endif

#endif  // STEERBOX_H_
