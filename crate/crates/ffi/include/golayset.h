#ifndef GOLAYSET_H
#define GOLAYSET_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum GsStatus {
  GS_STATUS_OK = 0,
  GS_STATUS_NULL_POINTER = 1,
  GS_STATUS_INVALID_ARGUMENT = 2,
  GS_STATUS_NOT_UNITARY = 3,
  GS_STATUS_CONSTRUCTION = 4,
  GS_STATUS_NOT_COMPLEMENTARY = 5,
  GS_STATUS_BUFFER_TOO_SMALL = 6,
  GS_STATUS_PANIC = 7,
} GsStatus;

/*
 A validated Butson Hadamard matrix.
 */
typedef struct GsButsonMatrix GsButsonMatrix;

/*
 An `N x N` polynomial matrix with unit coefficients.
 */
typedef struct GsPolyMatrix GsPolyMatrix;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/*
 Message describing the last failure on this thread, or NULL if none.
 The pointer stays valid until the next failing call on this thread.
 */
const char *gs_last_error_message(void);

/*
 Checks `n x n` row-major exponents for the Butson property without
 allocating a handle.

 # Safety
 `exps` must point to `n * n` readable values.
 */
enum GsStatus gs_verify_butson(uint32_t q, size_t n, const uint32_t *exps);

/*
 Validates `n x n` row-major exponents and, when `out` is not NULL, stores
 a new handle there.

 # Safety
 `exps` must point to `n * n` readable values; `out` must be NULL or
 writable.
 */
enum GsStatus gs_butson_new(uint32_t q,
                            size_t n,
                            const uint32_t *exps,
                            struct GsButsonMatrix **out);

/*
 # Safety
 `m` must be NULL or a handle from `gs_butson_new` not yet freed.
 */
void gs_butson_free(struct GsButsonMatrix *m);

/*
 Builds `H_0 D^{N^{perm[0]}} H_1 ... D^{N^{perm[n-1]}} H_n` from `n + 1`
 matrix handles and a permutation `perm` of `0..n`.

 # Safety
 `hadamards` must point to `n + 1` valid handles, `perm` to `n` values and
 `out` must be writable.
 */
enum GsStatus gs_construct(const struct GsButsonMatrix *const *hadamards,
                           const size_t *perm,
                           size_t n,
                           struct GsPolyMatrix **out);

/*
 # Safety
 `m` must be NULL or a handle from `gs_construct` not yet freed.
 */
void gs_poly_matrix_free(struct GsPolyMatrix *m);

/*
 Matrix dimension `N`, or 0 for NULL.

 # Safety
 `m` must be NULL or a live handle.
 */
size_t gs_poly_matrix_dim(const struct GsPolyMatrix *m);

/*
 Entry length `L`, or 0 for NULL.

 # Safety
 `m` must be NULL or a live handle.
 */
size_t gs_poly_matrix_len(const struct GsPolyMatrix *m);

/*
 Copies entry `(i, j)` into `out` as `L` exponents, lowest power first
 unless `descending` is set.

 # Safety
 `m` must be a live handle and `out` must have room for `capacity` values.
 */
enum GsStatus gs_poly_matrix_sequence(const struct GsPolyMatrix *m,
                                      size_t i,
                                      size_t j,
                                      bool descending,
                                      uint32_t *out,
                                      size_t capacity);

/*
 Exact complementarity test of `set_size` sequences of length `len`,
 given row-major in `exps`. Returns `GS_STATUS_NOT_COMPLEMENTARY` and stores
 the first offending shift in `shift` (if not NULL) when the test fails.

 # Safety
 `exps` must point to `set_size * len` values; `shift` must be NULL or
 writable.
 */
enum GsStatus gs_golay_check(uint32_t q,
                             size_t set_size,
                             size_t len,
                             const uint32_t *exps,
                             size_t *shift);

/*
 PMEPR of one sequence on a grid of `oversample * len` points.

 # Safety
 `exps` must point to `len` values and `value` must be writable.
 */
enum GsStatus gs_pmepr(uint32_t q,
                       size_t len,
                       const uint32_t *exps,
                       size_t oversample,
                       double *value);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* GOLAYSET_H */
