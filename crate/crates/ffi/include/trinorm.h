#ifndef TRINORM_H
#define TRINORM_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result of every call.
 */
typedef enum TnStatus {
  TN_STATUS_OK = 0,
  TN_STATUS_INVALID_PARAMS = 1,
  TN_STATUS_PARITY = 2,
  TN_STATUS_DOMAIN = 3,
  TN_STATUS_NULL_POINTER = 4,
  TN_STATUS_NO_CONVERGENCE = 5,
  TN_STATUS_BUFFER_TOO_SMALL = 6,
  TN_STATUS_PANIC = 7,
} TnStatus;

/**
 * The space of trinomials of one exponent pair.
 */
typedef struct TnSpace TnSpace;

/**
 * Named constants of a Case C pair with `m >= 2n`.
 */
typedef struct TnCaseCConstants {
  double k_mn;
  double k_m_mn;
  double j_mn;
  double j_m_mn;
  double lambda0;
  double tau0;
  double b_max;
  double a0;
  double c0;
  double a1;
  double c1;
} TnCaseCConstants;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Creates a space for the pair `(m, n)`, `m > n >= 1`.
 *
 * # Safety
 * `out` must be null or valid for writing one pointer.
 */
enum TnStatus tn_space_new(uint32_t m, uint32_t n, struct TnSpace **out);

/**
 * Releases a space. Null is ignored.
 *
 * # Safety
 * `space` must be null or come from [`tn_space_new`] and not be used afterwards.
 */
void tn_space_free(struct TnSpace *space);

/**
 * Writes `m` and `n` of the space.
 *
 * # Safety
 * Pointers must be null or valid.
 */
enum TnStatus tn_space_exponents(const struct TnSpace *space, uint32_t *m, uint32_t *n);

/**
 * Sup-norm of `a x^m + b x^(m-n) y^n + c y^m` on the square, by closed form
 * where one exists and by the edge oracle otherwise.
 *
 * # Safety
 * `space` and `out` must be null or valid.
 */
enum TnStatus tn_norm(const struct TnSpace *space, double a, double b, double c, double *out);

/**
 * Sup-norm from the critical points of the two edge restrictions.
 *
 * # Safety
 * `space` and `out` must be null or valid.
 */
enum TnStatus tn_edge_norm(const struct TnSpace *space, double a, double b, double c, double *out);

/**
 * Max of `|p|` over `samples` uniform points of each edge; `samples >= 2`.
 *
 * # Safety
 * `space` and `out` must be null or valid.
 */
enum TnStatus tn_grid_norm(const struct TnSpace *space,
                           double a,
                           double b,
                           double c,
                           size_t samples,
                           double *out);

/**
 * `tau0` for `m` even, `n` odd, `m >= 2n`.
 *
 * # Safety
 * `out` must be null or valid.
 */
enum TnStatus tn_tau0(uint32_t m, uint32_t n, double *out);

/**
 * Fills `out` with the constants of a Case C pair with `m >= 2n`.
 *
 * # Safety
 * `out` must be null or valid.
 */
enum TnStatus tn_case_c_constants(uint32_t m, uint32_t n, struct TnCaseCConstants *out);

/**
 * Upper-sheet height of the unit sphere over `(a, c)` in the hexagon
 * `|a|, |c|, |a + c| <= 1`. Case C only.
 *
 * # Safety
 * `space` and `out` must be null or valid.
 */
enum TnStatus tn_sphere_height(const struct TnSpace *space, double a, double c, double *out);

/**
 * 1 if `(a, c)` lies in the hexagon, else 0.
 */
int32_t tn_in_hexagon(double a, double c);

/**
 * Writes extreme points as consecutive `(a, b, c)` triples into `buf`.
 *
 * `capacity` counts points. `written` always receives the number of points
 * available; if it exceeds `capacity` nothing is copied and
 * `BufferTooSmall` is returned. `buf` may be null when `capacity` is 0.
 *
 * # Safety
 * `space` and `written` must be null or valid; `buf` must hold `3 * capacity` doubles.
 */
enum TnStatus tn_extreme_points(const struct TnSpace *space,
                                size_t samples_per_curve,
                                double *buf,
                                size_t capacity,
                                size_t *written);

/**
 * Static description of a status code.
 */
const char *tn_status_message(enum TnStatus status);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* TRINORM_H */
