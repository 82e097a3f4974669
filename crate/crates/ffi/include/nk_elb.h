#ifndef NK_ELB_H
#define NK_ELB_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result codes. `NK_STATUS_OK` is zero; everything else is an error.
 */
typedef enum NkStatus {
  NK_STATUS_OK = 0,
  NK_STATUS_NULL_POINTER = 1,
  NK_STATUS_INVALID_PARAM = 2,
  NK_STATUS_INVALID_SHOCK = 3,
  NK_STATUS_NO_BIFURCATION = 4,
  NK_STATUS_CONTRADICTION = 5,
  NK_STATUS_OUT_OF_RANGE = 6,
  NK_STATUS_NOT_MIXED_BAND = 7,
  NK_STATUS_INCONCLUSIVE = 8,
  NK_STATUS_INVALID_ARGUMENT = 9,
  NK_STATUS_DIVERGENT = 10,
  NK_STATUS_INTERNAL = 11,
} NkStatus;

typedef enum NkTruncatedKind {
  NK_TRUNCATED_KIND_PN = 0,
  NK_TRUNCATED_KIND_MIXED = 1,
  NK_TRUNCATED_KIND_PL = 2,
} NkTruncatedKind;

typedef enum NkRegime {
  NK_REGIME_NORMAL = 0,
  NK_REGIME_ELB = 1,
} NkRegime;

typedef enum NkPathKind {
  NK_PATH_KIND_PURE_NORMAL = 0,
  NK_PATH_KIND_PURE_ELB = 1,
  NK_PATH_KIND_MIXED = 2,
} NkPathKind;

/**
 * Opaque parameter set.
 */
typedef struct NkParams NkParams;

/**
 * Opaque solved path.
 */
typedef struct NkPath NkPath;

/**
 * The seven parameters without defaults.
 */
typedef struct NkCoreParams {
  double sigma;
  double beta;
  double psi;
  double lambda;
  double m_xx;
  double m_xpi;
  double m_pipi;
} NkCoreParams;

/**
 * Every resolved parameter, defaults included.
 */
typedef struct NkParamValues {
  double sigma;
  double beta;
  double psi;
  double lambda;
  double mu;
  double m_xx;
  double m_xpi;
  double m_pipi;
  double kappa;
  double eta;
  double c_bar;
  double d_max;
} NkParamValues;

typedef struct NkAssumptions {
  int a1_ok;
  int a2_ok;
  double a1_bound;
  double a2_bound;
} NkAssumptions;

/**
 * `msv_count` is −1 when the label came from the truncated classifier.
 */
typedef struct NkRegionLabel {
  int msv_count;
  enum NkTruncatedKind kind;
  int unstable;
} NkRegionLabel;

typedef struct NkPeriodState {
  double x;
  double pi;
  double i;
  enum NkRegime regime;
} NkPeriodState;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the last failure on this thread, or NULL if none. The
 * pointer stays valid until the next failing call on the same thread.
 */
const char *nk_last_error_message(void);

/**
 * Standard calibration with defaults filled.
 *
 * # Safety
 * `out` must be a valid pointer to writable storage for a handle.
 */
enum NkStatus nk_params_baseline(struct NkParams **out);

/**
 * Builds a parameter set from the core values, filling every default.
 *
 * # Safety
 * `core` must point to a valid `NkCoreParams`; `out` must be writable.
 */
enum NkStatus nk_params_new(const struct NkCoreParams *core, struct NkParams **out);

/**
 * Parses the same JSON parameter object the CLI accepts.
 *
 * # Safety
 * `json` must be a NUL-terminated string; `out` must be writable.
 */
enum NkStatus nk_params_from_json(const char *json, struct NkParams **out);

/**
 * Releases a parameter handle. NULL is ignored.
 *
 * # Safety
 * `p` must come from one of the `nk_params_*` constructors and not have
 * been freed already.
 */
void nk_params_free(struct NkParams *p);

/**
 * Copies out every resolved parameter.
 *
 * # Safety
 * `p` must be a live handle and `out` writable.
 */
enum NkStatus nk_params_values(const struct NkParams *p, struct NkParamValues *out);

/**
 * # Safety
 * `p` must be a live handle and `out` writable.
 */
enum NkStatus nk_check(const struct NkParams *p, struct NkAssumptions *out);

/**
 * Bifurcation point `p̄`; `NK_STATUS_NO_BIFURCATION` if none in (0, 1).
 *
 * # Safety
 * `p` must be a live handle and `out` writable.
 */
enum NkStatus nk_p_bar(const struct NkParams *p, double *out);

/**
 * # Safety
 * `p` must be a live handle and `out` writable.
 */
enum NkStatus nk_d_bar(const struct NkParams *p, double persistence, double *out);

/**
 * # Safety
 * `p` must be a live handle and `out` writable.
 */
enum NkStatus nk_d_bar0(const struct NkParams *p, double *out);

/**
 * Inflation floor `−μ/ψ` below which the bound binds.
 *
 * # Safety
 * `p` must be a live handle and `out` writable.
 */
enum NkStatus nk_inflation_floor(const struct NkParams *p, double *out);

/**
 * Labels one `(p, d)` cell. `msv != 0` selects the candidate-count
 * classifier, otherwise the truncated-horizon one.
 *
 * # Safety
 * `p` must be a live handle and `out` writable.
 */
enum NkStatus nk_classify(const struct NkParams *p,
                          double d,
                          double persistence,
                          int msv,
                          struct NkRegionLabel *out);

/**
 * Solves the low-state path for shock `(d, p, ell)`.
 *
 * # Safety
 * `p` must be a live handle and `out` writable.
 */
enum NkStatus nk_solve_path(const struct NkParams *p,
                            double d,
                            double persistence,
                            size_t ell,
                            struct NkPath **out);

/**
 * Releases a path handle. NULL is ignored.
 *
 * # Safety
 * `path` must come from `nk_solve_path` and not have been freed already.
 */
void nk_path_free(struct NkPath *path);

/**
 * Number of periods, 0 for a NULL handle.
 *
 * # Safety
 * `path` must be NULL or a live handle.
 */
size_t nk_path_len(const struct NkPath *path);

/**
 * # Safety
 * `path` must be a live handle and `out` writable.
 */
enum NkStatus nk_path_state(const struct NkPath *path, size_t k, struct NkPeriodState *out);

/**
 * Path kind; `switch_k` receives the last ELB period for mixed paths and
 * is left untouched otherwise. `switch_k` may be NULL.
 *
 * # Safety
 * `path` must be a live handle, `kind` writable, `switch_k` NULL or
 * writable.
 */
enum NkStatus nk_path_kind(const struct NkPath *path, enum NkPathKind *kind, size_t *switch_k);

/**
 * Pure-ELB spending multiplier at duration `ell`.
 *
 * # Safety
 * `p` must be a live handle and `out` writable.
 */
enum NkStatus nk_multiplier_pl(const struct NkParams *p,
                               double persistence,
                               size_t ell,
                               double *out);

/**
 * Long-horizon pure-ELB multiplier; `NK_STATUS_DIVERGENT` at or above `p̄`.
 *
 * # Safety
 * `p` must be a live handle and `out` writable.
 */
enum NkStatus nk_multiplier_pl_limit(const struct NkParams *p, double persistence, double *out);

/**
 * Pure-Normal spending multiplier at duration `ell`.
 *
 * # Safety
 * `p` must be a live handle and `out` writable.
 */
enum NkStatus nk_multiplier_pn(const struct NkParams *p,
                               double persistence,
                               size_t ell,
                               double *out);

/**
 * Mixed-path spending multiplier; requires `d̄(p) < d < d̄(0)`.
 *
 * # Safety
 * `p` must be a live handle and `out` writable.
 */
enum NkStatus nk_multiplier_mixed(const struct NkParams *p,
                                  double d,
                                  double persistence,
                                  size_t ell,
                                  double *out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* NK_ELB_H */
