#ifndef KIRMIG_H
#define KIRMIG_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum KmStatus {
  KM_STATUS_OK = 0,
  KM_STATUS_NULL_POINTER = 1,
  KM_STATUS_CONFIG = 2,
  KM_STATUS_NUMERIC = 3,
  KM_STATUS_SHAPE = 4,
  KM_STATUS_IO = 5,
  KM_STATUS_PANIC = 6,
} KmStatus;

typedef struct KmFrameSet KmFrameSet;

typedef struct KmImager KmImager;

typedef struct KmScenario KmScenario;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Copies the last error message of this thread into `buf` (NUL-terminated,
 * truncated to `len`). Returns the full message length including the NUL,
 * or 0 when there is no error.
 *
 * # Safety
 * `buf` must be valid for `len` bytes or null.
 */
size_t km_last_error_message(char *buf, size_t len);

/**
 * Library version as a static NUL-terminated string.
 */
const char *km_version(void);

/**
 * Parses and validates a scenario JSON document.
 *
 * # Safety
 * `json` must be a NUL-terminated string; `out` must be writable.
 */
enum KmStatus km_scenario_from_json(const char *json, struct KmScenario **out);

/**
 * # Safety
 * `scenario` must come from [`km_scenario_from_json`] and not be used again.
 */
void km_scenario_free(struct KmScenario *scenario);

/**
 * Synthesises the scenario's frames.
 *
 * # Safety
 * Pointers must be valid handles / writable.
 */
enum KmStatus km_simulate(const struct KmScenario *scenario, struct KmFrameSet **out);

/**
 * Parses frames from frame-CSV text.
 *
 * # Safety
 * `csv` must be a NUL-terminated string; `out` must be writable.
 */
enum KmStatus km_frameset_from_csv(const char *csv, struct KmFrameSet **out);

/**
 * Serialises frames to frame-CSV text; release it with [`km_string_free`].
 *
 * # Safety
 * `frames` must be a valid handle; `out` must be writable.
 */
enum KmStatus km_frameset_to_csv(const struct KmFrameSet *frames, char **out);

/**
 * # Safety
 * `frames` must be a valid handle or null.
 */
size_t km_frameset_len(const struct KmFrameSet *frames);

/**
 * Antenna count of the first frame, 0 when empty.
 *
 * # Safety
 * `frames` must be a valid handle or null.
 */
size_t km_frameset_n_antennas(const struct KmFrameSet *frames);

/**
 * # Safety
 * `frames` must be a valid handle; `out` must be writable.
 */
enum KmStatus km_frameset_time(const struct KmFrameSet *frames, size_t index, double *out);

/**
 * Entry `(p, q)` (0-based) of one frame.
 *
 * # Safety
 * `frames` must be a valid handle; `re` and `im` must be writable.
 */
enum KmStatus km_frameset_entry(const struct KmFrameSet *frames,
                                size_t index,
                                size_t p,
                                size_t q,
                                double *re,
                                double *im);

/**
 * # Safety
 * `frames` must come from this library and not be used again.
 */
void km_frameset_free(struct KmFrameSet *frames);

/**
 * Precomputes steering vectors for the scenario's array and grid.
 *
 * # Safety
 * `scenario` must be a valid handle; `out` must be writable.
 */
enum KmStatus km_imager_new(const struct KmScenario *scenario, struct KmImager **out);

/**
 * # Safety
 * `imager` must be a valid handle or null.
 */
size_t km_imager_grid_len(const struct KmImager *imager);

/**
 * # Safety
 * `imager` must be a valid handle; `x` and `y` must be writable.
 */
enum KmStatus km_imager_grid_point(const struct KmImager *imager,
                                   size_t index,
                                   double *x,
                                   double *y);

/**
 * Writes the unnormalised map of frame `index` into `values`, which must
 * hold exactly [`km_imager_grid_len`] doubles.
 *
 * # Safety
 * Handles must be valid; `values` must be writable for `len` doubles.
 */
enum KmStatus km_imager_map(const struct KmImager *imager,
                            const struct KmFrameSet *frames,
                            size_t index,
                            double *values,
                            size_t len);

/**
 * # Safety
 * `imager` must come from [`km_imager_new`] and not be used again.
 */
void km_imager_free(struct KmImager *imager);

/**
 * Tracks the scenario's objects through `frames` and returns the tracks CSV;
 * release it with [`km_string_free`].
 *
 * # Safety
 * Handles must be valid; `out` must be writable.
 */
enum KmStatus km_track_csv(const struct KmScenario *scenario,
                           const struct KmFrameSet *frames,
                           char **out);

/**
 * # Safety
 * `s` must come from this library and not be used again.
 */
void km_string_free(char *s);

/**
 * Background wavenumber for `(f, ε_r, σ)` with free-space permeability.
 *
 * # Safety
 * `re` and `im` must be writable.
 */
enum KmStatus km_wavenumber(double frequency_hz,
                            double rel_permittivity,
                            double conductivity_s_per_m,
                            double *re,
                            double *im);

/**
 * Bessel function of the first kind `J_order(z)`.
 *
 * # Safety
 * `out_re` and `out_im` must be writable.
 */
enum KmStatus km_bessel_j(int32_t order, double re, double im, double *out_re, double *out_im);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* KIRMIG_H */
