#ifndef WENO3_H
#define WENO3_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Field selector for [`weno3_simulation_copy_field`].
 */
typedef enum Weno3Field {
  /**
   * Cell-center x coordinates (`nx` values).
   */
  WENO3_FIELD_X = 0,
  /**
   * Cell-center y coordinates (`ny` values; empty in 1D).
   */
  WENO3_FIELD_Y = 1,
  /**
   * Scalar unknown (scalar problems only).
   */
  WENO3_FIELD_U = 2,
  WENO3_FIELD_DENSITY = 3,
  WENO3_FIELD_VELOCITY_X = 4,
  WENO3_FIELD_VELOCITY_Y = 5,
  WENO3_FIELD_PRESSURE = 6,
} Weno3Field;

/**
 * Result code of every fallible call.
 */
typedef enum Weno3Status {
  WENO3_STATUS_OK = 0,
  WENO3_STATUS_NULL_POINTER = 1,
  WENO3_STATUS_INVALID_ARGUMENT = 2,
  WENO3_STATUS_INVALID_SCHEME = 3,
  WENO3_STATUS_UNKNOWN_PROBLEM = 4,
  WENO3_STATUS_SOLVER_FAILURE = 5,
  WENO3_STATUS_BUFFER_TOO_SMALL = 6,
  WENO3_STATUS_PANIC = 7,
} Weno3Status;

/**
 * Opaque nonlinear-weight scheme.
 */
typedef struct Weno3Scheme Weno3Scheme;

/**
 * Opaque finished simulation.
 */
typedef struct Weno3Simulation Weno3Simulation;

/**
 * Optional overrides of a registered problem; zero keeps the default.
 */
typedef struct Weno3RunOptions {
  size_t nx;
  size_t ny;
  double cfl;
  double dt_over_dx;
  double t_final;
  double gamma;
} Weno3RunOptions;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Copies the calling thread's last error message into `buf`.
 *
 * # Safety
 * `buf` must be valid for `len` bytes or null; `required` must be null or writable.
 */
enum Weno3Status weno3_last_error_message(char *buf, size_t len, size_t *required);

/**
 * NUL-terminated library version; static storage, never freed.
 */
const char *weno3_version(void);

/**
 * Number of registered problems.
 */
size_t weno3_problem_count(void);

/**
 * Copies the id of problem `index` into `buf`.
 *
 * # Safety
 * Same buffer contract as [`weno3_last_error_message`].
 */
enum Weno3Status weno3_problem_id(size_t index, char *buf, size_t len, size_t *required);

/**
 * Parses a scheme descriptor such as `"limiter:chi5:k=3"` or `"js3:eps=1e-6:p=2"`.
 *
 * # Safety
 * `descriptor` must be a NUL-terminated string; `out` must be writable.
 */
enum Weno3Status weno3_scheme_parse(const char *descriptor,
                                    bool allow_unsafe_k,
                                    struct Weno3Scheme **out);

/**
 * Releases a scheme. Null is ignored.
 *
 * # Safety
 * `scheme` must come from [`weno3_scheme_parse`] and not be used afterwards.
 */
void weno3_scheme_free(struct Weno3Scheme *scheme);

/**
 * Writes the canonical descriptor of `scheme` into `buf`.
 *
 * # Safety
 * `scheme` must be a live handle; buffer contract as [`weno3_last_error_message`].
 */
enum Weno3Status weno3_scheme_descriptor(const struct Weno3Scheme *scheme,
                                         char *buf,
                                         size_t len,
                                         size_t *required);

/**
 * Nonlinear weights `(w0, w1)` of the stencil `(fm1, f0, fp1)`. `dx` is used by P+3 only.
 *
 * # Safety
 * `scheme` must be a live handle; `w0` and `w1` must be writable.
 */
enum Weno3Status weno3_weights(const struct Weno3Scheme *scheme,
                               double fm1,
                               double f0,
                               double fp1,
                               double dx,
                               double *w0,
                               double *w1);

/**
 * Weight limiter `χ(r)` of a limiter scheme.
 *
 * # Safety
 * `scheme` must be a live handle; `out` must be writable.
 */
enum Weno3Status weno3_chi(const struct Weno3Scheme *scheme, double r, double *out);

/**
 * Reconstructed flux `f̂_{i+1/2}` of the positive-speed stencil `(f_{i-1}, f_i, f_{i+1})`.
 *
 * # Safety
 * `scheme` must be a live handle; `out` must be writable.
 */
enum Weno3Status weno3_interface_flux(const struct Weno3Scheme *scheme,
                                      double fm1,
                                      double f0,
                                      double fp1,
                                      double dx,
                                      double *out);

/**
 * Runs the registered problem `problem_id` with `scheme` to its final time.
 *
 * `options` may be null for the problem defaults.
 *
 * # Safety
 * `problem_id` must be NUL-terminated; `scheme` a live handle; `out` writable.
 */
enum Weno3Status weno3_simulation_run(const char *problem_id,
                                      const struct Weno3Scheme *scheme,
                                      const struct Weno3RunOptions *options,
                                      struct Weno3Simulation **out);

/**
 * Releases a simulation. Null is ignored.
 *
 * # Safety
 * `sim` must come from [`weno3_simulation_run`] and not be used afterwards.
 */
void weno3_simulation_free(struct Weno3Simulation *sim);

/**
 * Grid size, step count and reached time of a finished simulation.
 *
 * # Safety
 * `sim` must be a live handle; each output pointer may be null.
 */
enum Weno3Status weno3_simulation_info(const struct Weno3Simulation *sim,
                                       size_t *nx,
                                       size_t *ny,
                                       size_t *steps,
                                       double *t_final);

/**
 * Copies one field of the final state into `buf` (row-major `j * nx + i` in 2D).
 *
 * `count` (if not null) receives the number of values of the field. Fails
 * with [`Weno3Status::BufferTooSmall`] if `len` is smaller.
 *
 * # Safety
 * `sim` must be a live handle; `buf` valid for `len` doubles or null.
 */
enum Weno3Status weno3_simulation_copy_field(const struct Weno3Simulation *sim,
                                             enum Weno3Field field,
                                             double *buf,
                                             size_t len,
                                             size_t *count);

/**
 * Relative conservation drift of component `component` (0 = mass).
 *
 * # Safety
 * `sim` must be a live handle; `out` writable.
 */
enum Weno3Status weno3_simulation_drift(const struct Weno3Simulation *sim,
                                        size_t component,
                                        double *out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* WENO3_H */
