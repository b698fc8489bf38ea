#ifndef SHEFFER_H
#define SHEFFER_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum {
  SHEFF_STATUS_OK = 0,
  SHEFF_STATUS_NULL_POINTER = 1,
  SHEFF_STATUS_INVALID_UTF8 = 2,
  SHEFF_STATUS_PARSE = 3,
  SHEFF_STATUS_DOMAIN = 4,
  SHEFF_STATUS_OUT_OF_RANGE = 5,
  SHEFF_STATUS_PANIC = 6,
} SheffStatus;

/**
 * A Sheffer operator with rational coefficients.
 */
typedef struct SheffOperator SheffOperator;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the last failed call on this thread, or NULL. Valid until the
 * next call into the library from the same thread.
 */
const char *sheff_last_error(void);

/**
 * # Safety
 * `s` must be NULL or a string returned by this library and not yet freed.
 */
void sheff_string_free(char *s);

/**
 * # Safety
 * `op` must be NULL or a handle returned by this library and not yet freed.
 */
void sheff_operator_free(SheffOperator *op);

/**
 * Named classical operator (identity, hermite, bernoulli, touchard,
 * falling_factorial, pascal) at dimension 1 and the given order.
 *
 * # Safety
 * `name` must be a NUL-terminated string; `out` must be writable.
 */
SheffStatus sheff_catalog(const char *name, size_t order, SheffOperator **out);

/**
 * Parses a `sheffer`, `spair` or `opmatrix` document at (dim, order).
 *
 * # Safety
 * `json` must be a NUL-terminated string; `out` must be writable.
 */
SheffStatus sheff_from_json(const char *json, size_t dim, size_t order, SheffOperator **out);

/**
 * The operator as a `sheffer` JSON document.
 *
 * # Safety
 * `op` must be a live handle; `out` must be writable.
 */
SheffStatus sheff_to_json(const SheffOperator *op, char **out);

/**
 * The Riordan array of the operator as a `riordan` JSON document.
 *
 * # Safety
 * `op` must be a live handle; `out` must be writable.
 */
SheffStatus sheff_riordan_json(const SheffOperator *op, char **out);

/**
 * # Safety
 * `op` must be a live handle; `dim` and `order` must be writable.
 */
SheffStatus sheff_shape(const SheffOperator *op, size_t *dim, size_t *order);

/**
 * Product `a·b`.
 *
 * # Safety
 * `a` and `b` must be live handles; `out` must be writable.
 */
SheffStatus sheff_mul(const SheffOperator *a, const SheffOperator *b, SheffOperator **out);

/**
 * # Safety
 * `op` must be a live handle; `out` must be writable.
 */
SheffStatus sheff_inverse(const SheffOperator *op, SheffOperator **out);

/**
 * Entry (row, col) of block (i, k) as an exact "p/q" string.
 *
 * # Safety
 * `op` must be a live handle; `out` must be writable.
 */
SheffStatus sheff_entry(const SheffOperator *op,
                        size_t i,
                        size_t k,
                        size_t row,
                        size_t col,
                        char **out);

/**
 * p_n as a `polynomial` JSON document, along ξ = (1, ..., 1).
 *
 * # Safety
 * `op` must be a live handle; `out` must be writable.
 */
SheffStatus sheff_sequence_json(const SheffOperator *op, size_t n, char **out);

/**
 * Appell and umbral membership. Every handle is a Sheffer operator.
 *
 * # Safety
 * `op` must be a live handle; `appell` and `umbral` must be writable.
 */
SheffStatus sheff_membership(const SheffOperator *op, bool *appell, bool *umbral);

/**
 * Runs the command-line interface on `argv[0..argc]` (without the program
 * name). Output and exit code are returned instead of printed.
 *
 * # Safety
 * `argv` must point to `argc` NUL-terminated strings; the output pointers
 * must be writable.
 */
SheffStatus sheff_run(const char *const *argv,
                      size_t argc,
                      char **out_stdout,
                      char **out_stderr,
                      int *exit_code);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* SHEFFER_H */
