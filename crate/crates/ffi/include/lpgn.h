#ifndef LPGN_H
#define LPGN_H

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Group selector for the classification oracle.
 */
typedef enum LpgnGroup {
  Trivial = 0,
  /**
   * Finite cyclic group; pass the order separately.
   */
  Cyclic = 1,
  Integers = 2,
} LpgnGroup;

/**
 * Status codes returned by every fallible entry point.
 */
typedef enum LpgnStatus {
  Ok = 0,
  NullPointer = 1,
  InvalidArgument = 2,
  UnsupportedExponent = 3,
  DimensionMismatch = 4,
  NonFiniteEntry = 5,
  NonMonotone = 6,
  InternalError = 7,
} LpgnStatus;

/**
 * Opaque dense complex matrix handle.
 */
typedef struct LpgnMatrix LpgnMatrix;

/**
 * Certified interval for a norm value.
 */
typedef struct LpgnNormEstimate {
  double lower;
  double upper;
  /**
   * True when the interval is tight enough to treat as exact.
   */
  bool exact;
} LpgnNormEstimate;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Library version as a NUL-terminated static string.
 */
const char *lpgn_version(void);

/**
 * Creates a `rows × cols` matrix from `2·rows·cols` interleaved doubles
 * (row-major `re, im` pairs). On success writes a handle to `out`; free
 * it with [`lpgn_matrix_free`].
 *
 * # Safety
 * `entries` must point to `len` readable doubles; `out` must be a valid
 * writable pointer.
 */
enum LpgnStatus lpgn_matrix_new(uintptr_t rows,
                                uintptr_t cols,
                                const double *entries,
                                uintptr_t len,
                                struct LpgnMatrix **out);

/**
 * Releases a matrix handle. Passing NULL is a no-op.
 *
 * # Safety
 * `m` must be NULL or a handle obtained from [`lpgn_matrix_new`] that
 * has not been freed already.
 */
void lpgn_matrix_free(struct LpgnMatrix *m);

/**
 * Certified `p→p` operator norm of a matrix, `p = p_num/p_den`
 * (`p_den == 0` for ∞).
 *
 * # Safety
 * `m` must be a live handle; `out` must be writable.
 */
enum LpgnStatus lpgn_matrix_norm(const struct LpgnMatrix *m,
                                 uint64_t p_num,
                                 uint64_t p_den,
                                 struct LpgnNormEstimate *out);

/**
 * Certified norm of the order-n cyclic-algebra element with the given
 * Gelfand coordinates (`2·n` interleaved doubles).
 *
 * # Safety
 * `gelfand` must point to `2·n` readable doubles; `out` must be
 * writable.
 */
enum LpgnStatus lpgn_cyclic_norm(uintptr_t n,
                                 const double *gelfand,
                                 uint64_t p_num,
                                 uint64_t p_den,
                                 struct LpgnNormEstimate *out);

/**
 * Certified norm bracket for convolution by a finitely supported kernel
 * on the integers: `count` sites with interleaved complex values, lower
 * bound from the Toeplitz compression at half-width `window`, upper
 * bound from the symbol/interpolation route.
 *
 * # Safety
 * `sites` must point to `count` readable entries and `values` to
 * `2·count` readable doubles; `out` must be writable.
 */
enum LpgnStatus lpgn_kernel_norm(const int64_t *sites,
                                 const double *values,
                                 uintptr_t count,
                                 uint64_t p_num,
                                 uint64_t p_den,
                                 uintptr_t window,
                                 struct LpgnNormEstimate *out);

/**
 * Pattern-matches the invertible-isometry form at exponent `p ≠ 2`.
 * Writes whether the element matches and, when it does, the character
 * index `k`; otherwise `k` is set to `UINT64_MAX`.
 *
 * # Safety
 * `gelfand` must point to `2·n` readable doubles; the two out pointers
 * must be writable.
 */
enum LpgnStatus lpgn_classify_isometry(uintptr_t n,
                                       const double *gelfand,
                                       uint64_t p_num,
                                       uint64_t p_den,
                                       double tol,
                                       bool *out_is_isometry,
                                       uint64_t *out_k);

/**
 * The representability oracle: whether the p-algebra of the group acts
 * isometrically on an L^q space (`q` strictly between 1 and ∞).
 *
 * # Safety
 * `out` must be writable.
 */
enum LpgnStatus lpgn_representable(enum LpgnGroup group,
                                   uint64_t order,
                                   uint64_t p_num,
                                   uint64_t p_den,
                                   uint64_t q_num,
                                   uint64_t q_den,
                                   bool *out);

/**
 * Whether the p- and q-algebras of the group are isometrically
 * isomorphic.
 *
 * # Safety
 * `out` must be writable.
 */
enum LpgnStatus lpgn_isomorphic_group_algebras(enum LpgnGroup group,
                                               uint64_t order,
                                               uint64_t p_num,
                                               uint64_t p_den,
                                               uint64_t q_num,
                                               uint64_t q_den,
                                               bool *out);

/**
 * Certified lower bound for the norm gap between the p- and q-algebras
 * on the order-n cyclic group, from a seeded witness search.
 *
 * # Safety
 * `out_gap` must be writable.
 */
enum LpgnStatus lpgn_witness_gap(uint64_t n,
                                 uint64_t p_num,
                                 uint64_t p_den,
                                 uint64_t q_num,
                                 uint64_t q_den,
                                 uintptr_t trials,
                                 uint64_t seed,
                                 double *out_gap);

/**
 * Antipodal parameter for a tabulated monotone circle map: `len` pairs
 * `(ts[i], hs[i])` interpolated piecewise-linearly, abscissae from 0 to
 * 2π. Writes `t* ∈ [0, π]` with residual within `tol·π`.
 *
 * # Safety
 * `ts` and `hs` must point to `len` readable doubles each; `out_t` must
 * be writable.
 */
enum LpgnStatus lpgn_antipodal_from_table(const double *ts,
                                          const double *hs,
                                          uintptr_t len,
                                          double tol,
                                          double *out_t);

#ifdef __cplusplus
} // extern "C"
#endif // __cplusplus

#endif /* LPGN_H */
