/* Copyright 2026 The speclocc developers

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

       http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License. */

/* C API of the speclocc shared library.
 *
 * Experiments are driven by a JSON config naming a command (estimate,
 * bench-qcrb, sweep-mu, verify-lemma1, verify-tails, entangle) and its
 * parameters. Results come back as an opaque handle owning the rendered
 * JSON report (and, for the benchmarking commands, a CSV table). All
 * functions are thread-safe; error messages are per-thread.
 */

#ifndef SPECLOCC_H
#define SPECLOCC_H

#include <stddef.h>

#ifdef __cplusplus
extern "C" {
#endif

#define SPECLOCC_VERSION "0.1.0"

/* Status codes; also the CLI exit codes (anything above 2 maps to 2). */
enum {
    SPECLOCC_OK = 0,
    SPECLOCC_ERR_CONFIG = 1,   /* invalid config; message names the field */
    SPECLOCC_ERR_SUITE = 2,    /* a verification suite found a violation */
    SPECLOCC_ERR_NUMERIC = 3,  /* numeric failure during the run */
    SPECLOCC_ERR_INTERNAL = 4,
};

typedef struct speclocc_result speclocc_result;

/* Library version string. */
const char *speclocc_version(void);

/* Runs the experiment described by config_json. Returns a status code.
 * On SPECLOCC_OK and SPECLOCC_ERR_SUITE (which still carries a report),
 * *out receives a handle that must be released with
 * speclocc_result_destroy. On other failures *out is NULL and
 * speclocc_last_error() describes the problem. */
int speclocc_run_config(const char *config_json, speclocc_result **out);

int speclocc_result_status(const speclocc_result *result);

/* Rendered JSON report; owned by the handle. */
const char *speclocc_result_json(const speclocc_result *result);

/* Rendered CSV table, or NULL when the command has no CSV schema. */
const char *speclocc_result_csv(const speclocc_result *result);

void speclocc_result_destroy(speclocc_result *result);

/* Message describing the most recent failure on the calling thread. */
const char *speclocc_last_error(void);

/* Entropy (bits) of a probability vector of length count; NaN on invalid
 * input (see speclocc_last_error). */
double speclocc_entanglement_entropy(const double *probs, size_t count);

/* Inverse quantum Fisher information of the spectrum model at the d-1 free
 * eigenvalues p; writes the (d-1)x(d-1) matrix row-major into out. Returns
 * a status code. */
int speclocc_qfi_inverse(const double *p, int d, double *out);

#ifdef __cplusplus
}
#endif

#endif /* SPECLOCC_H */
