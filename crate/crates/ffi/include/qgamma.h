#ifndef QGAMMA_H
#define QGAMMA_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>

/**
 * Result codes of every fallible call.
 */
typedef enum QgStatus {
  QG_STATUS_OK = 0,
  /**
   * A null pointer or a string that is not valid UTF-8.
   */
  QG_STATUS_INVALID_ARGUMENT = 1,
  QG_STATUS_INVALID_Q = 2,
  QG_STATUS_DOMAIN = 3,
  QG_STATUS_INVALID_CONFIG = 4,
  QG_STATUS_NON_CONVERGENCE = 5,
  QG_STATUS_OVERFLOW = 6,
  QG_STATUS_BRACKET_FAILURE = 7,
  QG_STATUS_ALPHA_BELOW_ROOT = 8,
  QG_STATUS_REJECTION_OVERFLOW = 9,
  /**
   * The library panicked; the context is still usable.
   */
  QG_STATUS_INTERNAL = 10,
} QgStatus;

/**
 * Opaque evaluation context.
 */
typedef struct QgContext QgContext;

/**
 * Opaque list of certificate reports.
 */
typedef struct QgReport QgReport;

typedef struct QgEvaluation {
  double value;
  double error_estimate;
  uint64_t terms_used;
} QgEvaluation;

typedef struct QgRoot {
  double root;
  double bracket_low;
  double bracket_high;
  double residual;
} QgRoot;

/**
 * A point of an inequality. Coordinates the inequality does not use are
 * NaN. `y` holds μ and `aux` holds λ for `cor_mu_lambda`; `aux` holds α
 * for `thm_alpha`.
 */
typedef struct QgPoint {
  double x;
  double y;
  double q;
  double aux;
} QgPoint;

typedef struct QgBoundPair {
  double lower;
  double ratio;
  double upper;
  double lower_margin;
  double upper_margin;
  double log_lower_margin;
  double log_upper_margin;
  bool strict;
  bool satisfied;
} QgBoundPair;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Creates a context. `max_terms = 0` keeps the default series term cap.
 *
 * # Safety
 * `out` must be a valid pointer to writable storage for one pointer.
 */
enum QgStatus qg_context_new(uint64_t max_terms, struct QgContext **out);

/**
 * Destroys a context. Null is ignored.
 *
 * # Safety
 * `ctx` must be null or a pointer from [`qg_context_new`] not yet freed.
 */
void qg_context_free(struct QgContext *ctx);

/**
 * Message of the last failed call on `ctx`, or an empty string. The
 * pointer stays valid until the next call that uses `ctx`.
 *
 * # Safety
 * `ctx` must be null or a live context.
 */
const char *qg_last_error(const struct QgContext *ctx);

/**
 * Library version as a static NUL-terminated string.
 */
const char *qg_version(void);

/**
 * Γ_q(x).
 *
 * # Safety
 * `ctx` must be a live context and `out` valid for one write.
 */
enum QgStatus qg_gamma_q(struct QgContext *ctx, double x, double q, struct QgEvaluation *out);

/**
 * ln Γ_q(x).
 *
 * # Safety
 * `ctx` must be a live context and `out` valid for one write.
 */
enum QgStatus qg_ln_gamma_q(struct QgContext *ctx, double x, double q, struct QgEvaluation *out);

/**
 * ψ_q(x).
 *
 * # Safety
 * `ctx` must be a live context and `out` valid for one write.
 */
enum QgStatus qg_psi_q(struct QgContext *ctx, double x, double q, struct QgEvaluation *out);

/**
 * The m-th derivative of ψ_q at `x`.
 *
 * # Safety
 * `ctx` must be a live context and `out` valid for one write.
 */
enum QgStatus qg_psi_q_m(struct QgContext *ctx,
                         uint32_t m,
                         double x,
                         double q,
                         struct QgEvaluation *out);

/**
 * γ_q = -ψ_q(1).
 *
 * # Safety
 * `ctx` must be a live context and `out` valid for one write.
 */
enum QgStatus qg_euler_gamma_q(struct QgContext *ctx, double q, struct QgEvaluation *out);

/**
 * The positive root of ψ_q.
 *
 * # Safety
 * `ctx` must be a live context and `out` valid for one write.
 */
enum QgStatus qg_psi_q_root(struct QgContext *ctx, double q, struct QgRoot *out);

/**
 * Bounds of inequality `ineq` (e.g. `"thm_mvt"`) at `point`. With
 * `force`, the hypotheses of the inequality are not enforced.
 *
 * # Safety
 * `ctx` must be a live context, `ineq` a NUL-terminated string and `out`
 * valid for one write.
 */
enum QgStatus qg_bounds(struct QgContext *ctx,
                        const char *ineq,
                        struct QgPoint point,
                        bool force,
                        struct QgBoundPair *out);

/**
 * Certifies `check` (an inequality id, a check name such as
 * `"convexity_f"`, or `"all"`) on `samples` seeded samples. The report is
 * written to `out` and must be released with [`qg_report_free`]. Wall
 * times are reported as 0 so reports are reproducible.
 *
 * # Safety
 * `ctx` must be a live context, `check` a NUL-terminated string and `out`
 * valid for one write.
 */
enum QgStatus qg_verify(struct QgContext *ctx,
                        const char *check,
                        size_t samples,
                        uint64_t seed,
                        struct QgReport **out);

/**
 * Number of individual reports (1 for a single check).
 *
 * # Safety
 * `report` must be null or a live report.
 */
size_t qg_report_len(const struct QgReport *report);

/**
 * True when every sample of every report passed.
 *
 * # Safety
 * `report` must be null or a live report.
 */
bool qg_report_all_passed(const struct QgReport *report);

/**
 * Total number of failed samples over all reports.
 *
 * # Safety
 * `report` must be null or a live report.
 */
uint64_t qg_report_failures(const struct QgReport *report);

/**
 * The report as a JSON array of report objects. Release the string with
 * [`qg_string_free`]. Returns null for a null report.
 *
 * # Safety
 * `report` must be null or a live report.
 */
char *qg_report_json(const struct QgReport *report);

/**
 * Destroys a report. Null is ignored.
 *
 * # Safety
 * `report` must be null or a pointer from [`qg_verify`] not yet freed.
 */
void qg_report_free(struct QgReport *report);

/**
 * Frees a string returned by this library. Null is ignored.
 *
 * # Safety
 * `s` must be null or a string from [`qg_report_json`] not yet freed.
 */
void qg_string_free(char *s);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* QGAMMA_H */
