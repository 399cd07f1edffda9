#ifndef BLOCHGAUGE_H
#define BLOCHGAUGE_H

/* Generated by cbindgen from src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result code of every fallible call.
 */
typedef enum BgStatus {
  BG_STATUS_OK = 0,
  BG_STATUS_NULL_POINTER = 1,
  BG_STATUS_INVALID_ARGUMENT = 2,
  BG_STATUS_OUTSIDE_BALL = 3,
  BG_STATUS_PRECONDITION = 4,
  BG_STATUS_NUMERICAL = 5,
  BG_STATUS_PANIC = 6,
} BgStatus;

/**
 * Opaque boundary data `ν = log ψ dm − μ_s`.
 */
typedef struct BgBoundary BgBoundary;

/**
 * Opaque holomorphic function.
 */
typedef struct BgFunction BgFunction;

/**
 * Opaque weight `ω`.
 */
typedef struct BgWeight BgWeight;

/**
 * A complex number, layout-compatible with C99 `double _Complex`.
 */
typedef struct BgComplex {
  double re;
  double im;
} BgComplex;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the last failed call on this thread, or NULL after a success.
 * The pointer stays valid until the next `bg_*` call on the same thread.
 */
const char *bg_last_error(void);

/**
 * Library version as a static NUL-terminated string.
 */
const char *bg_version(void);

/**
 * `ω(t) = t^α` for finite `α`.
 *
 * # Safety
 * `dst` must be valid for a pointer write.
 */
enum BgStatus bg_weight_power(double alpha, struct BgWeight **dst);

/**
 * `ω ≡ 1`.
 *
 * # Safety
 * `dst` must be valid for a pointer write.
 */
enum BgStatus bg_weight_constant(struct BgWeight **dst);

/**
 * `ω(t) = (log(e/t))^β`.
 *
 * # Safety
 * `dst` must be valid for a pointer write.
 */
enum BgStatus bg_weight_log_growth(double beta, struct BgWeight **dst);

/**
 * `ω(t) = t^{-β}`.
 *
 * # Safety
 * `dst` must be valid for a pointer write.
 */
enum BgStatus bg_weight_power_growth(double beta, struct BgWeight **dst);

/**
 * # Safety
 * `w` must be NULL or a handle from a `bg_weight_*` constructor, freed once.
 */
void bg_weight_free(struct BgWeight *w);

/**
 * `ω(t)` for `t ∈ (0, 1]`.
 *
 * # Safety
 * `w` must be a live weight handle and `value` valid for a write.
 */
enum BgStatus bg_weight_eval(const struct BgWeight *w, double t, double *value);

/**
 * Empirical moderateness constant over dyadic `t = 2^{-k}`, `k ≤ k_max`.
 *
 * # Safety
 * `w` must be a live weight handle and `value` valid for a write.
 */
enum BgStatus bg_weight_moderateness(const struct BgWeight *w, uint32_t k_max, double *value);

/**
 * `∫_0^δ ω(t)/t dt / ω(δ)`. Sets `*divergent` to 1 (and `*ratio` to
 * infinity) when the integral diverges, else 0.
 *
 * # Safety
 * `w` must be a live weight handle; `ratio` and `divergent` valid for writes.
 */
enum BgStatus bg_weight_fast_majorant(const struct BgWeight *w,
                                      double delta,
                                      double *ratio,
                                      int *divergent);

/**
 * Named boundary data: `zero`, `exp_cos`, `smooth_bump`, `abs_one_minus`,
 * `singular_atom`, `two_atoms`, `exp_cos_atoms`.
 *
 * # Safety
 * `name` must be a NUL-terminated string and `dst` valid for a pointer write.
 */
enum BgStatus bg_boundary_preset(const char *name, struct BgBoundary **dst);

/**
 * Boundary data from `2^k` equispaced density samples `ψ(2πi/L)` (or a
 * constant density `ψ ≡ 1` when `sample_count` is 0) and `atom_count`
 * point masses `(angle, mass)`.
 *
 * # Safety
 * `samples` must hold `sample_count` doubles, `atom_angles` and `atom_masses`
 * `atom_count` doubles each; `dst` must be valid for a pointer write.
 */
enum BgStatus bg_boundary_new(const double *samples,
                              size_t sample_count,
                              const double *atom_angles,
                              const double *atom_masses,
                              size_t atom_count,
                              struct BgBoundary **dst);

/**
 * # Safety
 * `b` must be NULL or a handle from a `bg_boundary_*` constructor, freed once.
 */
void bg_boundary_free(struct BgBoundary *b);

/**
 * Poisson integral `Pν(z)` on the disk.
 *
 * # Safety
 * `b` must be a live boundary handle and `value` valid for a write.
 */
enum BgStatus bg_poisson(const struct BgBoundary *b,
                         struct BgComplex z,
                         size_t nodes,
                         double *value);

/**
 * `exp(Pν(z)) · [max_{∂B_z} Pν − Pν(z)] / ω(1 − |z|)`; a NULL weight means `ω ≡ 1`.
 *
 * # Safety
 * `b` must be a live boundary handle, `w` NULL or a live weight handle, and
 * `value` valid for a write.
 */
enum BgStatus bg_theorem2(const struct BgBoundary *b,
                          const struct BgWeight *w,
                          struct BgComplex z,
                          double *value);

/**
 * Named example function (see the `presets` config names), with the default
 * truncation degree and parameters.
 *
 * # Safety
 * `name` must be a NUL-terminated string and `dst` valid for a pointer write.
 */
enum BgStatus bg_function_preset(const char *name, struct BgFunction **dst);

/**
 * Polynomial `Σ_k c_k z^k` on the disk.
 *
 * # Safety
 * `coeffs` must hold `len` values and `dst` be valid for a pointer write.
 */
enum BgStatus bg_function_polynomial(const struct BgComplex *coeffs,
                                     size_t len,
                                     struct BgFunction **dst);

/**
 * `F = exp(∫ (ζ+z)/(ζ−z) dν(ζ))` from boundary data; `base_nodes` is the
 * initial circle grid (a power of two).
 *
 * # Safety
 * `b` must be a live boundary handle and `dst` valid for a pointer write.
 */
enum BgStatus bg_function_herglotz(const struct BgBoundary *b,
                                   size_t base_nodes,
                                   struct BgFunction **dst);

/**
 * # Safety
 * `f` must be NULL or a handle from a `bg_function_*` constructor, freed once.
 */
void bg_function_free(struct BgFunction *f);

/**
 * Complex dimension `n`, or 0 for a NULL handle.
 *
 * # Safety
 * `f` must be NULL or a live function handle.
 */
size_t bg_function_dim(const struct BgFunction *f);

/**
 * `f(z)` at the ball point `z` with `n` coordinates.
 *
 * # Safety
 * `f` must be a live function handle, `z` hold `n` values, `value` valid for a write.
 */
enum BgStatus bg_function_eval(const struct BgFunction *f,
                               const struct BgComplex *z,
                               size_t n,
                               struct BgComplex *value);

/**
 * Complex gradient `(∂f/∂z_1, …, ∂f/∂z_n)` written to `grad[0..n]`.
 *
 * # Safety
 * `f` must be a live function handle; `z` and `grad` must hold `n` values.
 */
enum BgStatus bg_function_gradient(const struct BgFunction *f,
                                   const struct BgComplex *z,
                                   size_t n,
                                   struct BgComplex *grad);

/**
 * The four condition values `(lhs_i, lhs_ii, lhs_iii, lhs_iv)` at `z`.
 *
 * # Safety
 * `f` and `w` must be live handles, `z` hold `n` values and `values` hold 4.
 */
enum BgStatus bg_conditions(const struct BgFunction *f,
                            const struct BgWeight *w,
                            const struct BgComplex *z,
                            size_t n,
                            double *values);

/**
 * Schwarz–Pick margin `2|g| log(1/|g|)/(1−|z|²) − |∇g|` of a zero-free
 * self-map `g` of the disk or ball.
 *
 * # Safety
 * `g` must be a live function handle, `z` hold `n` values, `value` valid for a write.
 */
enum BgStatus bg_schwarz_pick_margin(const struct BgFunction *g,
                                     const struct BgComplex *z,
                                     size_t n,
                                     double *value);

/**
 * Sets `*inside` to 1 when the small ball `B_z` meets the zero set, else 0.
 *
 * # Safety
 * `f` must be a live function handle, `z` hold `n` values, `inside` valid for a write.
 */
enum BgStatus bg_in_e(const struct BgFunction *f, const struct BgComplex *z, size_t n, int *inside);

/**
 * `φ_a(z)`, the ball automorphism exchanging `a` and 0, written to `result[0..n]`.
 *
 * # Safety
 * `a`, `z` and `result` must each hold `n` values.
 */
enum BgStatus bg_automorphism_apply(const struct BgComplex *a,
                                    const struct BgComplex *z,
                                    size_t n,
                                    struct BgComplex *result);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* BLOCHGAUGE_H */
