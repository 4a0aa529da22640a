/* Copyright 2026 The mrinep Authors
 * SPDX-License-Identifier: Apache-2.0
 *
 * C interface of libmrinep: greedy minimal rational interpolation of
 * u(z) = T(z)^{-1} V and eigenpair recovery from its poles and residues.
 *
 * Conventions
 *  - Every fallible call returns an mrinep_status; MRINEP_OK is zero. After a
 *    failure, mrinep_last_error() describes it (per thread).
 *  - Handles are opaque and owned by the caller unless documented as borrowed;
 *    release them with the matching *_destroy function (NULL is accepted).
 *  - Blocks of shape n x m are contiguous, column-major arrays of mrinep_complex.
 *    Sample sets are S such blocks back to back.
 *  - Calls on distinct handles, and const calls on one handle, may run concurrently.
 */
#ifndef MRINEP_H
#define MRINEP_H

#include <stddef.h>
#include <stdint.h>

#if defined(MRINEP_BUILDING_LIBRARY)
#define MRINEP_API __attribute__((visibility("default")))
#else
#define MRINEP_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

/* Layout-compatible with std::complex<double> and C99 double _Complex. */
typedef struct mrinep_complex
{
  double re;
  double im;
} mrinep_complex;

typedef enum mrinep_status
{
  MRINEP_OK = 0,
  MRINEP_ERR_INVALID_ARGUMENT = 1,
  MRINEP_ERR_NEAR_SINGULAR = 2,
  MRINEP_ERR_NODE_COINCIDENCE = 3,
  MRINEP_ERR_POLE_PROXIMITY = 4,
  MRINEP_ERR_SOLVE_FAILED = 5,
  MRINEP_ERR_NO_CONVERGENCE = 6,
  MRINEP_ERR_BUDGET_EXHAUSTED = 7,
  MRINEP_ERR_PARTIAL_RUN = 8,
  MRINEP_ERR_IO = 9,
  MRINEP_ERR_INTERNAL = 10
} mrinep_status;

typedef enum mrinep_normalization
{
  MRINEP_NORM_EUCLIDEAN = 0,
  MRINEP_NORM_CONSTRAINED_SUM = 1,
  MRINEP_NORM_AS_GIVEN = 2
} mrinep_normalization;

typedef enum mrinep_trace_event
{
  MRINEP_EVENT_OK = 0,
  MRINEP_EVENT_OFFSET = 1,
  MRINEP_EVENT_SUSPECT = 2
} mrinep_trace_event;

/* Bits returned by mrinep_surrogate_flags. */
#define MRINEP_FLAG_ROBUST_FALLBACK 1
#define MRINEP_FLAG_WEIGHT_AMBIGUOUS 2

typedef struct mrinep_problem mrinep_problem;
typedef struct mrinep_surrogate mrinep_surrogate;
typedef struct mrinep_greedy_result mrinep_greedy_result;
typedef struct mrinep_eigenpairs mrinep_eigenpairs;

/* A segment [a, b] scanned through `candidates` equispaced points (endpoints included). */
typedef struct mrinep_region
{
  mrinep_complex a;
  mrinep_complex b;
  size_t candidates;
} mrinep_region;

MRINEP_API const char *mrinep_version(void);
MRINEP_API const char *mrinep_status_string(mrinep_status status);
MRINEP_API const char *mrinep_last_error(void);

/* ---- problems ---------------------------------------------------------- */

/* Built-in problem by registry name; params_json is a JSON object (NULL or "" for defaults). */
MRINEP_API mrinep_status mrinep_problem_create(const char *name, const char *params_json, mrinep_problem **out);
MRINEP_API mrinep_status mrinep_problem_create_diag_rational(const mrinep_complex *poles, size_t count, size_t dim,
                                                             mrinep_problem **out);
/* T(z) = T0 + z T1, both n x n column-major. */
MRINEP_API mrinep_status mrinep_problem_create_linear_pencil(size_t n, const mrinep_complex *t0,
                                                             const mrinep_complex *t1, mrinep_problem **out);
MRINEP_API mrinep_status mrinep_problem_create_scalar_sin(size_t n, mrinep_problem **out);
MRINEP_API mrinep_status mrinep_problem_create_helmholtz(int nx, int ny, double wavenumber, mrinep_problem **out);
MRINEP_API void mrinep_problem_destroy(mrinep_problem *problem);

MRINEP_API size_t mrinep_problem_dim(const mrinep_problem *problem);
/* Borrowed string, valid for the lifetime of the handle. */
MRINEP_API const char *mrinep_problem_name(const mrinep_problem *problem);

/* Right-hand side block of dim x columns. kind: "problem", "inlet", "ones", "gaussian".
 * "problem" and "inlet" are single-column. */
MRINEP_API mrinep_status mrinep_problem_rhs(const mrinep_problem *problem, const char *kind, uint64_t seed,
                                            size_t columns, mrinep_complex *out);
MRINEP_API mrinep_status mrinep_problem_solve(const mrinep_problem *problem, mrinep_complex z,
                                              const mrinep_complex *b, size_t columns, mrinep_complex *x);
MRINEP_API mrinep_status mrinep_problem_apply(const mrinep_problem *problem, mrinep_complex z,
                                              const mrinep_complex *x, size_t columns, mrinep_complex *y);
/* Resonator only: writes the plain-text mesh dump. */
MRINEP_API mrinep_status mrinep_problem_dump_mesh(const mrinep_problem *problem, const char *path);

/* Registry listing into buf (NUL-terminated, truncated to cap). *needed receives the full
 * length including the terminator. as_json selects JSON over plain text. */
MRINEP_API mrinep_status mrinep_list_problems(int as_json, char *buf, size_t cap, size_t *needed);

/* ---- surrogates -------------------------------------------------------- */

/* Minimal rational interpolant of `count` samples (values: count blocks of n x m). */
MRINEP_API mrinep_status mrinep_surrogate_build(const mrinep_complex *nodes, size_t count,
                                                const mrinep_complex *values, size_t n, size_t m,
                                                mrinep_normalization mode, mrinep_surrogate **out);
/* Barycentric form with caller-supplied weights, kept unchanged. */
MRINEP_API mrinep_status mrinep_surrogate_from_weights(const mrinep_complex *nodes, size_t count,
                                                       const mrinep_complex *weights,
                                                       const mrinep_complex *values, size_t n, size_t m,
                                                       mrinep_surrogate **out);
MRINEP_API void mrinep_surrogate_destroy(mrinep_surrogate *surrogate);

MRINEP_API size_t mrinep_surrogate_size(const mrinep_surrogate *surrogate);
MRINEP_API size_t mrinep_surrogate_rows(const mrinep_surrogate *surrogate);
MRINEP_API size_t mrinep_surrogate_cols(const mrinep_surrogate *surrogate);
MRINEP_API int mrinep_surrogate_flags(const mrinep_surrogate *surrogate);
MRINEP_API mrinep_status mrinep_surrogate_nodes(const mrinep_surrogate *surrogate, mrinep_complex *out);
MRINEP_API mrinep_status mrinep_surrogate_weights(const mrinep_surrogate *surrogate, mrinep_complex *out);

/* u~(z) into an n x m block. MRINEP_ERR_POLE_PROXIMITY at a surrogate pole. */
MRINEP_API mrinep_status mrinep_surrogate_eval(const mrinep_surrogate *surrogate, mrinep_complex z,
                                               mrinep_complex *out);
/* d(z); MRINEP_ERR_NODE_COINCIDENCE at a node. */
MRINEP_API mrinep_status mrinep_surrogate_denominator(const mrinep_surrogate *surrogate, mrinep_complex z,
                                                      mrinep_complex *out);
/* rho(z) = 1 / |d(z)| (0 at nodes, capped at poles). */
MRINEP_API mrinep_status mrinep_surrogate_indicator(const mrinep_surrogate *surrogate, mrinep_complex z,
                                                    double *out);
/* |T(z) u~(z) - rhs|_F. */
MRINEP_API mrinep_status mrinep_surrogate_residual_norm(const mrinep_surrogate *surrogate,
                                                        const mrinep_problem *problem, mrinep_complex z,
                                                        const mrinep_complex *rhs, size_t columns, double *out);
MRINEP_API mrinep_status mrinep_next_sample_point(const mrinep_surrogate *surrogate, const mrinep_region *region,
                                                  size_t *index, mrinep_complex *z, double *indicator);
MRINEP_API mrinep_status mrinep_surrogate_save(const mrinep_surrogate *surrogate, const char *path);
MRINEP_API mrinep_status mrinep_surrogate_load(const char *path, mrinep_surrogate **out);

/* ---- greedy sampling --------------------------------------------------- */

typedef struct mrinep_greedy_options
{
  size_t budget;                       /* total number of samples (solves) */
  const mrinep_complex *initial_nodes; /* NULL: region endpoints */
  size_t initial_count;
  mrinep_normalization mode;
  int use_qr;             /* euclidean weights from the QR factor of the samples */
  int early_stop_enabled; /* stop once the max indicator drops below early_stop */
  double early_stop;
} mrinep_greedy_options;

typedef struct mrinep_trace_record
{
  size_t iteration;
  mrinep_complex z;         /* sampled point */
  mrinep_complex requested; /* indicator argmax */
  double indicator;
  double u_norm;
  double solve_seconds;
  mrinep_trace_event event;
} mrinep_trace_record;

MRINEP_API void mrinep_greedy_options_init(mrinep_greedy_options *options);

/* Runs the greedy loop. Returns MRINEP_OK, or MRINEP_ERR_PARTIAL_RUN with *out holding the
 * samples gathered before the abort; any other status leaves *out NULL. */
MRINEP_API mrinep_status mrinep_greedy_run(const mrinep_problem *problem, const mrinep_complex *rhs, size_t columns,
                                           const mrinep_region *region, const mrinep_greedy_options *options,
                                           mrinep_greedy_result **out);
MRINEP_API void mrinep_greedy_destroy(mrinep_greedy_result *result);
/* Borrowed; valid for the lifetime of the result. */
MRINEP_API const mrinep_surrogate *mrinep_greedy_surrogate(const mrinep_greedy_result *result);
MRINEP_API size_t mrinep_greedy_solves(const mrinep_greedy_result *result);
MRINEP_API size_t mrinep_greedy_trace_size(const mrinep_greedy_result *result);
MRINEP_API mrinep_status mrinep_greedy_trace_record(const mrinep_greedy_result *result, size_t index,
                                                    mrinep_trace_record *out);
/* |u(z_j)| of the j-th node. */
MRINEP_API mrinep_status mrinep_greedy_sample_norm(const mrinep_greedy_result *result, size_t index, double *out);
/* Empty string unless the run was partial. Borrowed. */
MRINEP_API const char *mrinep_greedy_abort_reason(const mrinep_greedy_result *result);

/* ---- eigenpairs -------------------------------------------------------- */

typedef struct mrinep_recovery_options
{
  double tol_cluster; /* relative pole/eigenvalue clustering distance */
  double tol_region;  /* region membership margin relative to the segment length */
  double newton_tol;
  int filtering;      /* flag near-duplicate eigenvalues */
} mrinep_recovery_options;

typedef struct mrinep_eigenpair_info
{
  mrinep_complex lambda;
  double residual; /* |T(lambda) w|_2 with |w|_2 = 1 */
  int order_index;
  int in_region;
  int filtered;
  size_t source_pole;
} mrinep_eigenpair_info;

typedef struct mrinep_pole_info
{
  mrinep_complex pole;
  int order;
  double polish_displacement;
  size_t cluster_size;
} mrinep_pole_info;

MRINEP_API void mrinep_recovery_options_init(mrinep_recovery_options *options);
MRINEP_API mrinep_status mrinep_eigenpairs_extract(const mrinep_surrogate *surrogate, const mrinep_region *region,
                                                   const mrinep_problem *problem,
                                                   const mrinep_recovery_options *options,
                                                   mrinep_eigenpairs **out);
MRINEP_API void mrinep_eigenpairs_destroy(mrinep_eigenpairs *eigenpairs);
MRINEP_API size_t mrinep_eigenpairs_count(const mrinep_eigenpairs *eigenpairs);
MRINEP_API mrinep_status mrinep_eigenpairs_info(const mrinep_eigenpairs *eigenpairs, size_t index,
                                                mrinep_eigenpair_info *out);
/* Unit eigenvector of length dim. */
MRINEP_API mrinep_status mrinep_eigenpairs_vector(const mrinep_eigenpairs *eigenpairs, size_t index,
                                                  mrinep_complex *out);
/* Recomputes the filtered flags with the given tolerance; entries are never removed. */
MRINEP_API mrinep_status mrinep_eigenpairs_filter(mrinep_eigenpairs *eigenpairs, double tol_cluster);
MRINEP_API size_t mrinep_eigenpairs_pole_count(const mrinep_eigenpairs *eigenpairs);
MRINEP_API mrinep_status mrinep_eigenpairs_pole(const mrinep_eigenpairs *eigenpairs, size_t index,
                                                mrinep_pole_info *out);

/* |T(lambda) w|_2 from one operator application. */
MRINEP_API mrinep_status mrinep_verify_residual(const mrinep_problem *problem, mrinep_complex lambda,
                                                const mrinep_complex *w, double *out);

#ifdef __cplusplus
}
#endif

#endif /* MRINEP_H */
