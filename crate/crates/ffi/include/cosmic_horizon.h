#ifndef COSMIC_HORIZON_H
#define COSMIC_HORIZON_H

/* Generated by cbindgen; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

#define CH_OK 0

#define CH_ERR_NULL_POINTER 1

#define CH_ERR_DOMAIN 2

#define CH_ERR_POLE 3

#define CH_ERR_CONVERGENCE 4

#define CH_ERR_SLOW_CONVERGENCE 5

#define CH_ERR_OVERFLOW 6

#define CH_ERR_COINCIDENCE 7

#define CH_ERR_QUADRATURE 8

#define CH_ERR_STIFFNESS 9

#define CH_ERR_SERIES_RADIUS 10

#define CH_ERR_INDEX 11

#define CH_ERR_EXTRAPOLATION 12

#define CH_ERR_PANIC 99

/**
 * Tabulated radial solutions of one non-static mode. Opaque to C.
 */
typedef struct ChRadialSolutionPair ChRadialSolutionPair;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the last failed call on this thread; empty after a success.
 * The pointer stays valid until the next library call on this thread.
 */
const char *ch_last_error_message(void);

/**
 * Static name of a status code, e.g. `"DomainError"`.
 */
const char *ch_status_name(int32_t code);

/**
 * Renormalized φ² on the horizon by the closed form; the value carries its `M⁻²` dependence.
 *
 * # Safety
 * `out` must be null or valid for writing one `double`.
 */
int32_t ch_phi2_closed(double theta, double alpha, double mass, double *out);

/**
 * φ² by the point-splitting limit with the default split sequence.
 *
 * # Safety
 * `value` and `error` must be null or valid for writing one `double` each.
 */
int32_t ch_phi2_limit(double theta, double alpha, double mass, double *value, double *error);

/**
 * Leading polar divergence of φ².
 *
 * # Safety
 * `out` must be null or valid for writing one `double`.
 */
int32_t ch_phi2_near_axis(double theta, double alpha, double mass, double *out);

/**
 * `cos θ` at which φ² is twice its equatorial value.
 *
 * # Safety
 * `out` must be null or valid for writing one `double`.
 */
int32_t ch_dominance_cos_theta(double alpha, double *out);

/**
 * Effective degree `λ = l − |m| + |m|/α`.
 *
 * # Safety
 * `out` must be null or valid for writing one `double`.
 */
int32_t ch_lambda_of(uint32_t l, int32_t m, double alpha, double *out);

/**
 * Ferrers function `P_ν^{−μ}(x)`, `x ∈ (−1, 1)`, `μ ≥ 0`.
 *
 * # Safety
 * `out` must be null or valid for writing one `double`.
 */
int32_t ch_ferrers_p(double nu, double mu, double x, double *out);

/**
 * Legendre function of the second kind `Q_λ(ζ)`, `ζ > 1`.
 *
 * # Safety
 * `out` must be null or valid for writing one `double`.
 */
int32_t ch_legendre_q(double lambda, double zeta, double *out);

/**
 * `sinh(χ/α) / [sinh χ (cosh(χ/α) − cos Δφ)]`, the generalized Heine kernel.
 *
 * # Safety
 * `out` must be null or valid for writing one `double`.
 */
int32_t ch_heine_kernel(double chi, double dphi, double alpha, double *out);

/**
 * Static-mode horizon Green's function by its double mode sum, with the
 * certified truncation tail.
 *
 * # Safety
 * `value` and `tail` must be null or valid for writing one `double` each.
 */
int32_t ch_horizon_green(double theta,
                         double theta_p,
                         double dphi,
                         double eta,
                         double alpha,
                         double mass,
                         double tol,
                         double *value,
                         double *tail);

/**
 * Builds the radial solutions of mode `(n ≠ 0, λ)` on `(1, η_max]`. Release
 * with [`ch_radial_free`].
 *
 * # Safety
 * `out` must be null or valid for writing one pointer.
 */
int32_t ch_radial_new(int32_t n, double lambda, double eta_max, struct ChRadialSolutionPair **out);

/**
 * Releases a handle from [`ch_radial_new`]; null is ignored.
 *
 * # Safety
 * `pair` must be null or a live handle not used afterwards.
 */
void ch_radial_free(struct ChRadialSolutionPair *pair);

/**
 * Horizon-regular solution `p(η)`.
 *
 * # Safety
 * `pair` must be null or a live handle; `out` null or writable.
 */
int32_t ch_radial_p(const struct ChRadialSolutionPair *pair, double eta, double *out);

/**
 * Decaying solution `q(η)`.
 *
 * # Safety
 * `pair` must be null or a live handle; `out` null or writable.
 */
int32_t ch_radial_q(const struct ChRadialSolutionPair *pair, double eta, double *out);

/**
 * `(η²−1) W[p, q](η)`, which equals `−2|n|`.
 *
 * # Safety
 * `pair` must be null or a live handle; `out` null or writable.
 */
int32_t ch_radial_wronskian(const struct ChRadialSolutionPair *pair, double eta, double *out);

/**
 * Fitted near-horizon exponent of `p`, close to `|n|/2`.
 *
 * # Safety
 * `pair` must be null or a live handle; `out` null or writable.
 */
int32_t ch_radial_exponent_fit(const struct ChRadialSolutionPair *pair, double *out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* COSMIC_HORIZON_H */
