// Copyright 2026 The conjbar Authors
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

#ifndef CONJBAR_CONJBAR_H_
#define CONJBAR_CONJBAR_H_

#include <stddef.h>
#include <stdint.h>

#if defined(CONJBAR_BUILDING_LIBRARY)
#define CONJBAR_API __attribute__((visibility("default")))
#else
#define CONJBAR_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum conjbar_status {
  CONJBAR_OK = 0,
  CONJBAR_INVALID_ARGUMENT = 1,
  CONJBAR_SHAPE = 2,
  CONJBAR_NOT_INTERIOR = 3,
  CONJBAR_NOT_POSITIVE_DEFINITE = 4,
  CONJBAR_DOMAIN = 5,
  CONJBAR_NOT_CONVERGED = 6,
  CONJBAR_INTERNAL = 7
} conjbar_status;

typedef enum conjbar_family {
  CONJBAR_LOG = 0,
  CONJBAR_LOGDET = 1,
  CONJBAR_HPOWER = 2,
  CONJBAR_HGEOM = 3,
  CONJBAR_RTDET = 4,
  CONJBAR_RPOWER = 5,
  CONJBAR_RGEOM = 6,
  CONJBAR_LINF = 7,
  CONJBAR_LSPEC = 8
} conjbar_family;

typedef enum conjbar_newton_status {
  CONJBAR_NEWTON_CONVERGED = 0,
  CONJBAR_NEWTON_STALLED = 1,
  CONJBAR_NEWTON_ITERATION_CAP = 2,
  CONJBAR_NEWTON_LEFT_INTERIOR = 3
} conjbar_newton_status;

typedef enum conjbar_format { CONJBAR_FORMAT_CSV = 0, CONJBAR_FORMAT_MARKDOWN = 1 } conjbar_format;

typedef struct conjbar_cone conjbar_cone;
typedef struct conjbar_experiment conjbar_experiment;

// Diagnostics from a conjugate-gradient call.
typedef struct conjbar_conj_info {
  int iterations;
  double residual;  // |<g*, r> + nu|
  int converged;    // nonzero when converged
  int newton_status;  // conjbar_newton_status for the generic method, 0 otherwise
} conjbar_conj_info;

// Human-readable message for the last failed call on this thread ("" if none).
CONJBAR_API const char* conjbar_last_error(void);
CONJBAR_API const char* conjbar_status_string(conjbar_status status);

// ---------------------------------------------------------------------------
// Cones
//
// Points are passed as packed arrays of conjbar_cone_dim() doubles: the head
// block (u or p; d1 entries for rpower/rgeom, one otherwise), then the
// perspective entry for log/logdet, then either the length-d vector block or
// the full matrix block in row-major order (d x d for logdet/rtdet, d1 x d2
// for lspec).
// ---------------------------------------------------------------------------

// d1 and d2 by family:
//   log, logdet, hgeom, rtdet, linf: d1 ignored, d2 = d
//   hpower: d1 ignored, alpha of length d2 required
//   rpower: d1 = p-block length, alpha of length d2 required
//   rgeom: d1 ignored (p block of length one), d2
//   lspec: d1 <= d2 matrix dimensions
// alpha must be NULL for families without power weights.
CONJBAR_API conjbar_status conjbar_cone_create(conjbar_family family, int d1, int d2,
                                               const double* alpha, size_t alpha_len,
                                               conjbar_cone** out);
CONJBAR_API void conjbar_cone_destroy(conjbar_cone* cone);

CONJBAR_API double conjbar_cone_nu(const conjbar_cone* cone);
CONJBAR_API size_t conjbar_cone_dim(const conjbar_cone* cone);

// *out is set to 1 or 0.
CONJBAR_API conjbar_status conjbar_in_interior(const conjbar_cone* cone, const double* w,
                                               int* out);
CONJBAR_API conjbar_status conjbar_dual_in_interior(const conjbar_cone* cone, const double* r,
                                                    int* out);

CONJBAR_API conjbar_status conjbar_barrier_value(const conjbar_cone* cone, const double* w,
                                                 double* out);
CONJBAR_API conjbar_status conjbar_barrier_gradient(const conjbar_cone* cone, const double* w,
                                                    double* g_out);
CONJBAR_API conjbar_status conjbar_hessian_apply(const conjbar_cone* cone, const double* w,
                                                 const double* x, double* out);
CONJBAR_API conjbar_status conjbar_inverse_hessian_apply(const conjbar_cone* cone,
                                                         const double* w, const double* x,
                                                         double* out);

// Specialized oracle. Returns CONJBAR_NOT_CONVERGED (with g_out filled) when
// the root finder did not converge. info may be NULL.
CONJBAR_API conjbar_status conjbar_conjugate_gradient(const conjbar_cone* cone, const double* r,
                                                      double* g_out, conjbar_conj_info* info);
CONJBAR_API conjbar_status conjbar_conjugate_value(const conjbar_cone* cone, const double* r,
                                                   double* out);

// Damped Newton. eps <= 0 selects the default; w0 may be NULL. Returns
// CONJBAR_NOT_CONVERGED (with g_out filled) when the method hit the iteration
// cap or left the interior; a stalled run returns its best iterate with
// CONJBAR_OK and info->newton_status set to CONJBAR_NEWTON_STALLED.
CONJBAR_API conjbar_status conjbar_generic_conjugate_gradient(const conjbar_cone* cone,
                                                              const double* r, double eps,
                                                              const double* w0, double* g_out,
                                                              conjbar_conj_info* info);

// ---------------------------------------------------------------------------
// Experiment grid
// ---------------------------------------------------------------------------

typedef struct conjbar_experiment_config {
  const conjbar_family* cones;
  size_t num_cones;
  const int* dims;
  size_t num_dims;
  const double* offsets;
  size_t num_offsets;
  int trials;
  uint64_t seed;
  double eps;
  int rpower_d1;
  int threads;
} conjbar_experiment_config;

typedef struct conjbar_cell_stats {
  conjbar_family cone;
  int d;
  double offset;
  int trials;
  double mean_iters_generic;
  double mean_iters_specialized;
  double mean_residual_generic;
  double mean_residual_specialized;
  int failures;
} conjbar_cell_stats;

// Fills *config with the benchmark defaults (six vector cones, d in
// {20, 40, 60}, o in {1e-5, ..., 1e-1}, 10 trials, seed 42). The arrays point
// to static storage.
CONJBAR_API void conjbar_experiment_config_default(conjbar_experiment_config* config);

CONJBAR_API conjbar_status conjbar_experiment_run(const conjbar_experiment_config* config,
                                                  conjbar_experiment** out);
CONJBAR_API size_t conjbar_experiment_cell_count(const conjbar_experiment* exp);
CONJBAR_API conjbar_status conjbar_experiment_cell(const conjbar_experiment* exp, size_t index,
                                                   conjbar_cell_stats* out);
// *out is a NUL-terminated string to release with conjbar_string_free.
CONJBAR_API conjbar_status conjbar_experiment_render(const conjbar_experiment* exp,
                                                     conjbar_format format, char** out);
CONJBAR_API void conjbar_experiment_destroy(conjbar_experiment* exp);

CONJBAR_API void conjbar_string_free(char* s);

#ifdef __cplusplus
}
#endif

#endif  // CONJBAR_CONJBAR_H_
