#ifndef HOMALG_H
#define HOMALG_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum HomalgStatus {
  HOMALG_STATUS_OK = 0,
  HOMALG_STATUS_NULL_ARGUMENT = 1,
  HOMALG_STATUS_INVALID_UTF8 = 2,
  HOMALG_STATUS_SCHEMA = 3,
  HOMALG_STATUS_DIMENSION = 4,
  HOMALG_STATUS_NOT_A_COMPLEX = 5,
  HOMALG_STATUS_INVALID = 6,
  HOMALG_STATUS_CAP_EXCEEDED = 7,
  HOMALG_STATUS_UNSUPPORTED = 8,
  HOMALG_STATUS_INCONCLUSIVE = 9,
  HOMALG_STATUS_OUT_OF_RANGE = 10,
  HOMALG_STATUS_OVERFLOW = 11,
  HOMALG_STATUS_PANIC = 12,
} HomalgStatus;

typedef struct HomalgComplex HomalgComplex;

typedef struct HomalgGroup HomalgGroup;

typedef struct HomalgMatrix HomalgMatrix;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the last failed call on this thread; empty after a success.
 * The pointer stays valid until the next call into the library.
 */
const char *homalg_last_error(void);

const char *homalg_version(void);

/**
 * # Safety
 * `s` must come from this library or be null.
 */
void homalg_string_free(char *s);

/**
 * Row-major `rows × cols` matrix.
 *
 * # Safety
 * `entries` must point to `rows * cols` values.
 */
enum HomalgStatus homalg_matrix_new(size_t rows,
                                    size_t cols,
                                    const int64_t *entries,
                                    struct HomalgMatrix **out);

/**
 * # Safety
 * `json` must be a NUL-terminated string.
 */
enum HomalgStatus homalg_matrix_from_json(const char *json, struct HomalgMatrix **out);

/**
 * # Safety
 * `m` must be a live handle.
 */
enum HomalgStatus homalg_matrix_to_json(const struct HomalgMatrix *m, char **out);

/**
 * # Safety
 * `m` must be a live handle or null.
 */
size_t homalg_matrix_rows(const struct HomalgMatrix *m);

/**
 * # Safety
 * `m` must be a live handle or null.
 */
size_t homalg_matrix_cols(const struct HomalgMatrix *m);

/**
 * # Safety
 * `m` must be a live handle.
 */
enum HomalgStatus homalg_matrix_get(const struct HomalgMatrix *m,
                                    size_t row,
                                    size_t col,
                                    int64_t *out);

/**
 * # Safety
 * `m` must come from this library or be null.
 */
void homalg_matrix_free(struct HomalgMatrix *m);

/**
 * Smith normal form `u · a · v = d`. Each output is a new handle.
 *
 * # Safety
 * `a` must be a live handle; outputs must be writable.
 */
enum HomalgStatus homalg_snf(const struct HomalgMatrix *a,
                             struct HomalgMatrix **u,
                             struct HomalgMatrix **d,
                             struct HomalgMatrix **v);

/**
 * Cokernel of `a` as a group.
 *
 * # Safety
 * `a` must be a live handle.
 */
enum HomalgStatus homalg_matrix_cokernel(const struct HomalgMatrix *a, struct HomalgGroup **out);

/**
 * # Safety
 * `json` must be a NUL-terminated string.
 */
enum HomalgStatus homalg_complex_from_json(const char *json, struct HomalgComplex **out);

/**
 * # Safety
 * `c` must be a live handle.
 */
enum HomalgStatus homalg_complex_to_json(const struct HomalgComplex *c, char **out);

/**
 * `H_n` of the complex.
 *
 * # Safety
 * `c` must be a live handle.
 */
enum HomalgStatus homalg_complex_homology(const struct HomalgComplex *c,
                                          int64_t n,
                                          struct HomalgGroup **out);

/**
 * All homology as JSON.
 *
 * # Safety
 * `c` must be a live handle.
 */
enum HomalgStatus homalg_complex_homology_json(const struct HomalgComplex *c, char **out);

/**
 * `hyperExt^n(c, d)`.
 *
 * # Safety
 * `c` and `d` must be live handles.
 */
enum HomalgStatus homalg_hyper_ext(const struct HomalgComplex *c,
                                   const struct HomalgComplex *d,
                                   int64_t n,
                                   struct HomalgGroup **out);

/**
 * # Safety
 * `c` must come from this library or be null.
 */
void homalg_complex_free(struct HomalgComplex *c);

/**
 * `ℤ^free_rank ⊕ ⊕ ℤ/d_i`; the factors must form a divisibility chain.
 *
 * # Safety
 * `factors` must point to `len` values.
 */
enum HomalgStatus homalg_group_new(size_t free_rank,
                                   const int64_t *factors,
                                   size_t len,
                                   struct HomalgGroup **out);

/**
 * # Safety
 * `json` must be a NUL-terminated string.
 */
enum HomalgStatus homalg_group_from_json(const char *json, struct HomalgGroup **out);

/**
 * # Safety
 * `g` must be a live handle.
 */
enum HomalgStatus homalg_group_to_json(const struct HomalgGroup *g, char **out);

/**
 * Human-readable form such as `ℤ ⊕ ℤ/2`.
 *
 * # Safety
 * `g` must be a live handle.
 */
enum HomalgStatus homalg_group_to_string(const struct HomalgGroup *g, char **out);

/**
 * # Safety
 * `g` must be a live handle or null.
 */
size_t homalg_group_free_rank(const struct HomalgGroup *g);

/**
 * # Safety
 * `g` must be a live handle or null.
 */
size_t homalg_group_num_invariant_factors(const struct HomalgGroup *g);

/**
 * # Safety
 * `g` must be a live handle.
 */
enum HomalgStatus homalg_group_invariant_factor(const struct HomalgGroup *g,
                                                size_t i,
                                                int64_t *out);

/**
 * # Safety
 * `g` must come from this library or be null.
 */
void homalg_group_free(struct HomalgGroup *g);

/**
 * Homology of the dualizing complex from `{"degree": group, …}`.
 *
 * # Safety
 * `homology` must be a NUL-terminated string.
 */
enum HomalgStatus homalg_dualizing_json(const char *homology, char **out);

/**
 * Class group report for `{"min_poly": […]}`; a zero bound means the
 * Minkowski bound rounded up.
 *
 * # Safety
 * `field` must be a NUL-terminated string.
 */
enum HomalgStatus homalg_class_group_json(const char *field, uint64_t bound, char **out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* HOMALG_H */
