#ifndef TROPFIT_H
#define TROPFIT_H

/* Generated by cbindgen from src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

#define TF_ALGEBRA_MAX_PLUS 0

#define TF_ALGEBRA_MAX_TIMES 1

typedef enum TfStatus {
  TF_STATUS_OK = 0,
  TF_STATUS_INVALID_INPUT = 1,
  TF_STATUS_DOMAIN = 2,
  TF_STATUS_GUARD_REFUSED = 3,
  TF_STATUS_NULL_POINTER = 4,
  TF_STATUS_BUFFER_TOO_SMALL = 5,
  TF_STATUS_PANIC = 6,
} TfStatus;

/**
 * Result of a fit.
 */
typedef struct TfFit TfFit;

/**
 * Validated sample set.
 */
typedef struct TfSamples TfSamples;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the last failure on this thread, or null. The pointer stays
 * valid until the next failing call on the same thread.
 */
const char *tf_last_error_message(void);

/**
 * Library version as a static NUL-terminated string.
 */
const char *tf_version(void);

/**
 * # Safety
 * `xs` and `ys` must point to `len` doubles; `out` must be writable.
 */
enum TfStatus tf_samples_new(const double *xs,
                             const double *ys,
                             size_t len,
                             uint32_t algebra_code,
                             struct TfSamples **out);

/**
 * # Safety
 * `samples` must be null or a handle from [`tf_samples_new`] not yet freed.
 */
void tf_samples_free(struct TfSamples *samples);

/**
 * # Safety
 * `samples` must be a live handle; `out` must be writable.
 */
enum TfStatus tf_fit(const struct TfSamples *samples, size_t n_terms, struct TfFit **out);

/**
 * # Safety
 * `fit` must be null or a handle from [`tf_fit`] not yet freed.
 */
void tf_fit_free(struct TfFit *fit);

/**
 * Number of monomials, or 0 for a null handle.
 *
 * # Safety
 * `fit` must be null or a live handle.
 */
size_t tf_fit_n_terms(const struct TfFit *fit);

/**
 * # Safety
 * `fit` must be a live handle; `out` must be writable.
 */
enum TfStatus tf_fit_delta_star(const struct TfFit *fit, double *out);

/**
 * # Safety
 * `fit` must be a live handle; `out` must be writable.
 */
enum TfStatus tf_fit_error(const struct TfFit *fit, double *out);

/**
 * Exponents in increasing order.
 *
 * # Safety
 * `fit` must be a live handle, `buf` must hold `cap` doubles and
 * `len_out` must be writable.
 */
enum TfStatus tf_fit_exponents(const struct TfFit *fit, double *buf, size_t cap, size_t *len_out);

/**
 * Coefficients matching [`tf_fit_exponents`].
 *
 * # Safety
 * As [`tf_fit_exponents`].
 */
enum TfStatus tf_fit_coefficients(const struct TfFit *fit,
                                  double *buf,
                                  size_t cap,
                                  size_t *len_out);

/**
 * # Safety
 * `fit` must be a live handle; `out` must be writable.
 */
enum TfStatus tf_fit_predict(const struct TfFit *fit, double x, double *out);

/**
 * `Δ*` for `n_min..=n_max` terms, written in increasing order of terms.
 *
 * # Safety
 * `samples` must be a live handle, `buf` must hold `cap` doubles and
 * `len_out` must be writable.
 */
enum TfStatus tf_sweep(const struct TfSamples *samples,
                       size_t n_min,
                       size_t n_max,
                       double *buf,
                       size_t cap,
                       size_t *len_out);

/**
 * Optimal `Δ` over all partitions into at most `n_terms` parts.
 *
 * # Safety
 * `samples` must be a live handle; `out` must be writable.
 */
enum TfStatus tf_oracle_exact(const struct TfSamples *samples, size_t n_terms, double *out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* TROPFIT_H */
