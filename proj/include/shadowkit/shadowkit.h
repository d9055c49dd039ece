/*
 * Copyright 2026 The shadowkit Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *      http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

/*
 * C interface to shadowkit.
 *
 * Every fallible call returns an sk_status. On failure the message for the
 * calling thread is available from sk_last_error() until the next call.
 * Complex vectors and matrices cross the boundary as interleaved (re, im)
 * doubles; matrices are row-major.
 */

#ifndef SHADOWKIT_H
#define SHADOWKIT_H

#include <stddef.h>
#include <stdint.h>

#if defined(SHADOWKIT_BUILDING)
#define SK_API __attribute__((visibility("default")))
#else
#define SK_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum sk_status {
    SK_OK = 0,
    SK_ERR_INVALID_ARGUMENT = 1,
    SK_ERR_DIMENSION_MISMATCH = 2,
    SK_ERR_NUMERICAL = 3,
    SK_ERR_IO = 4,
    SK_ERR_INTERNAL = 5,
    SK_ERR_NULL_POINTER = 6,
    SK_ERR_BUFFER_TOO_SMALL = 7
} sk_status;

typedef struct sk_rng sk_rng;
typedef struct sk_state sk_state;
typedef struct sk_shadow sk_shadow;

SK_API const char *sk_version(void);
SK_API const char *sk_last_error(void);

SK_API sk_status sk_rng_create(uint64_t seed, sk_rng **out);
SK_API void sk_rng_destroy(sk_rng *rng);

/* Decimal string of the number of n-qubit stabilizer states. `needed`
 * receives the buffer size including the terminator. */
SK_API sk_status sk_stabilizer_count(uint32_t qubits, char *buffer, size_t buffer_len, size_t *needed);
SK_API sk_status sk_stabilizer_sample(sk_rng *rng, uint32_t qubits, sk_state **out);
SK_API sk_status sk_haar_state(sk_rng *rng, size_t dim, sk_state **out);

/* `amplitudes` holds 2 * dim doubles and must be normalized. */
SK_API sk_status sk_state_create(const double *amplitudes, size_t dim, sk_state **out);
SK_API size_t sk_state_dim(const sk_state *state);
SK_API sk_status sk_state_amplitudes(const sk_state *state, double *out, size_t out_len);
SK_API void sk_state_destroy(sk_state *state);

SK_API sk_status sk_shadow_build(const sk_state *const *projectors, const uint64_t *counts, size_t record_count,
                                 uint32_t qubits, sk_shadow **out);
SK_API size_t sk_shadow_dim(const sk_shadow *shadow);
/* `out` holds 2 * dim * dim doubles. */
SK_API sk_status sk_shadow_matrix(const sk_shadow *shadow, double *out, size_t out_len);
/* <phi| shadow |phi> */
SK_API sk_status sk_shadow_expectation(const sk_shadow *shadow, const sk_state *phi, double *out);
/* Maximum over the Gouy phase of the fidelity between the shadow and the
 * phase-shifted prepared state. */
SK_API sk_status sk_shadow_compensated_fidelity(const sk_shadow *shadow, const sk_state *prepared,
                                                double *fidelity, double *phase);
SK_API void sk_shadow_destroy(sk_shadow *shadow);

SK_API sk_status sk_batch_count(size_t observables, double delta, size_t *out);

/* Runs a CLI command. `config_json` is a config object or a manifest.
 * On success `*manifest_json` receives a string to release with
 * sk_string_free; it may be NULL when not wanted. */
SK_API sk_status sk_run_command(const char *command, const char *config_json, const char *out_dir,
                                char **manifest_json);
SK_API void sk_string_free(char *s);

#ifdef __cplusplus
}
#endif

#endif
