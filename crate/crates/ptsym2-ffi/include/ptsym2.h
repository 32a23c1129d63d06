#ifndef PTSYM2_H
#define PTSYM2_H

/* Generated by cbindgen from ptsym2-ffi; do not edit by hand. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Status code for every fallible call in this ABI.
 */
typedef enum PtsymStatus {
  PtsymStatus_Ok = 0,
  PtsymStatus_NullPointer = 1,
  PtsymStatus_InvalidArgument = 2,
  PtsymStatus_NonFinite = 3,
  PtsymStatus_ConstraintViolated = 4,
  PtsymStatus_NotUnimodular = 5,
  PtsymStatus_NotInvolutionLike = 6,
  PtsymStatus_NegativeSquare = 7,
  PtsymStatus_TrivialParity = 8,
  PtsymStatus_NotDistinct = 9,
  PtsymStatus_NonRealPhase = 10,
  PtsymStatus_ZeroOperator = 11,
  PtsymStatus_NotPhaseReal = 12,
  PtsymStatus_ZeroAxis = 13,
  PtsymStatus_NotCommuting = 14,
  PtsymStatus_OffSurface = 15,
  PtsymStatus_ConditionsViolated = 16,
  PtsymStatus_BrokenSymmetry = 17,
  PtsymStatus_DefectiveCase = 18,
  PtsymStatus_NotHermitian = 19,
} PtsymStatus;

/**
 * Spectral classification tag returned by [`ptsym2_classify`].
 */
typedef enum PtsymSpectralTag {
  PtsymSpectralTag_UnbrokenDiagonalizable = 0,
  PtsymSpectralTag_UnbrokenDefective = 1,
  PtsymSpectralTag_Broken = 2,
} PtsymSpectralTag;

/**
 * Opaque validated parity operator.
 */
typedef struct PtsymParity PtsymParity;

/**
 * Opaque validated time-reversal operator.
 */
typedef struct PtsymTimeReversal PtsymTimeReversal;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Static description of a status code; never null.
 */
const char *ptsym2_status_message(enum PtsymStatus status);

/**
 * Default constraint-validation tolerance.
 */
double ptsym2_default_tol(void);

/**
 * Builds a nontrivial parity from the complex coefficient vector given
 * as `double[6]` `[re1, im1, re2, im2, re3, im3]`.
 *
 * # Safety
 * `a` must point to 6 readable doubles and `out` to a writable pointer.
 */
enum PtsymStatus ptsym2_parity_from_a(const double *a, double tolerance, struct PtsymParity **out);

/**
 * Builds the trivial parity `sign·I`, `sign = ±1`.
 *
 * # Safety
 * `out` must point to a writable pointer.
 */
enum PtsymStatus ptsym2_parity_trivial(int sign, struct PtsymParity **out);

/**
 * Classifies an involution matrix (`double[8]`) as a parity operator.
 *
 * # Safety
 * `mat` must point to 8 readable doubles and `out` to a writable pointer.
 */
enum PtsymStatus ptsym2_parity_from_matrix(const double *mat,
                                           double tolerance,
                                           struct PtsymParity **out);

/**
 * Writes the parity's representation matrix into `out` (`double[8]`).
 *
 * # Safety
 * `parity` must be a live handle; `out` must point to 8 writable doubles.
 */
enum PtsymStatus ptsym2_parity_matrix(const struct PtsymParity *parity, double *out);

/**
 * # Safety
 * `parity` must be a live handle; `out` must be writable.
 */
enum PtsymStatus ptsym2_parity_is_trivial(const struct PtsymParity *parity, bool *out);

/**
 * Releases a parity handle; a null pointer is a no-op.
 *
 * # Safety
 * `parity` must have been returned by this library and not freed before.
 */
void ptsym2_parity_free(struct PtsymParity *parity);

/**
 * Builds a time reversal from phase `(eps_re, eps_im)` and coefficients
 * `c` (`double[4]`, order `c0..c3`).
 *
 * # Safety
 * `c` must point to 4 readable doubles and `out` to a writable pointer.
 */
enum PtsymStatus ptsym2_time_reversal_from_c(double eps_re,
                                             double eps_im,
                                             const double *c,
                                             double tolerance,
                                             struct PtsymTimeReversal **out);

/**
 * Writes the matrix of the `v -> M conj(v)` form into `out` (`double[8]`).
 *
 * # Safety
 * `t` must be a live handle; `out` must point to 8 writable doubles.
 */
enum PtsymStatus ptsym2_time_reversal_matrix(const struct PtsymTimeReversal *t, double *out);

/**
 * The sign of `T²`: `+1` or `-1`.
 *
 * # Safety
 * `t` must be a live handle; `out` must be writable.
 */
enum PtsymStatus ptsym2_time_reversal_square(const struct PtsymTimeReversal *t, int *out);

/**
 * Normalized coefficients: `eps_out` receives `[re, im]`, `c_out`
 * receives `c0..c3`.
 *
 * # Safety
 * `t` must be a live handle; `eps_out` must point to 2 and `c_out` to 4
 * writable doubles.
 */
enum PtsymStatus ptsym2_time_reversal_coeffs(const struct PtsymTimeReversal *t,
                                             double *eps_out,
                                             double *c_out);

/**
 * Releases a time-reversal handle; a null pointer is a no-op.
 *
 * # Safety
 * `t` must have been returned by this library and not freed before.
 */
void ptsym2_time_reversal_free(struct PtsymTimeReversal *t);

/**
 * Builds a nontrivial parity commuting with `t` (requires `T² = I`).
 *
 * # Safety
 * `t` must be a live handle; `out` must point to a writable pointer.
 */
enum PtsymStatus ptsym2_construct_parity(const struct PtsymTimeReversal *t,
                                         double tolerance,
                                         struct PtsymParity **out);

/**
 * Max-norm commutation residual of `P∘T − T∘P`.
 *
 * # Safety
 * `parity` and `t` must be live handles; `out` must be writable.
 */
enum PtsymStatus ptsym2_commute_residual(const struct PtsymParity *parity,
                                         const struct PtsymTimeReversal *t,
                                         double *out);

/**
 * Whether the parity and time reversal commute at `tolerance`.
 *
 * # Safety
 * `parity` and `t` must be live handles; `out` must be writable.
 */
enum PtsymStatus ptsym2_commutes(const struct PtsymParity *parity,
                                 const struct PtsymTimeReversal *t,
                                 double tolerance,
                                 bool *out);

/**
 * The nontrivial parities commuting with both time reversals. Writes 0
 * or 2 to `count`; on 2, `out_pos`/`out_neg` receive the pair.
 *
 * # Safety
 * `t1`, `t2` must be live handles; the out-pointers must be writable.
 */
enum PtsymStatus ptsym2_shared_parities(const struct PtsymTimeReversal *t1,
                                        const struct PtsymTimeReversal *t2,
                                        double tolerance,
                                        struct PtsymParity **out_pos,
                                        struct PtsymParity **out_neg,
                                        uint64_t *count);

/**
 * Whether the two time reversals have the same commutant.
 *
 * # Safety
 * `t1` and `t2` must be live handles; `out` must be writable.
 */
enum PtsymStatus ptsym2_same_commutant(const struct PtsymTimeReversal *t1,
                                       const struct PtsymTimeReversal *t2,
                                       double tolerance,
                                       bool *out);

/**
 * Samples `n` commuting parities from the hyperboloid of `t`
 * (requires `T² = I`). `rows` receives `n` records of 9 doubles:
 * frame coordinates `x', y', z'` followed by global `f1..f3, b1..b3`.
 * Deterministic in `seed`.
 *
 * # Safety
 * `t` must be a live handle; `rows` must point to `9*n` writable doubles.
 */
enum PtsymStatus ptsym2_sample_hyperboloid(const struct PtsymTimeReversal *t,
                                           uint64_t n,
                                           uint64_t seed,
                                           double *rows);

/**
 * Classifies a PT-symmetric matrix (`double[8]`). On success writes the
 * tag, both eigenvalues (`lambda_out`: `[re1, im1, re2, im2]`) and the
 * discriminant.
 *
 * # Safety
 * `mat` must point to 8 readable doubles; `tag_out` must be writable,
 * `lambda_out` must point to 4 and `disc_out` to 1 writable double.
 */
enum PtsymStatus ptsym2_classify(const double *mat,
                                 double tolerance,
                                 enum PtsymSpectralTag *tag_out,
                                 double *lambda_out,
                                 double *disc_out);

/**
 * `(Re trace)² − 4 Re det` of a PT-symmetric matrix.
 *
 * # Safety
 * `mat` must point to 8 readable doubles; `out` must be writable.
 */
enum PtsymStatus ptsym2_discriminant(const double *mat, double tolerance, double *out);

/**
 * Writes the matrix `[[r e^{iθ}, s], [s, r e^{-iθ}]]` into `out`.
 *
 * # Safety
 * `out` must point to 8 writable doubles.
 */
enum PtsymStatus ptsym2_bender(double r, double theta, double s, double *out);

/**
 * A canonical time reversal commuting with the matrix.
 *
 * # Safety
 * `mat` must point to 8 readable doubles; `out` must be writable.
 */
enum PtsymStatus ptsym2_find_symmetry(const double *mat,
                                      double tolerance,
                                      struct PtsymTimeReversal **out);

/**
 * The family member of `t` at the four parameters (`double[4]`);
 * writes its matrix into `out`.
 *
 * # Safety
 * `t` must be a live handle; `params` must point to 4 readable and
 * `out` to 8 writable doubles.
 */
enum PtsymStatus ptsym2_family_from_symmetry(const struct PtsymTimeReversal *t,
                                             const double *params,
                                             double *out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* PTSYM2_H */
