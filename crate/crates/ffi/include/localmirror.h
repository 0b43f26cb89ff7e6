#ifndef LOCALMIRROR_H
#define LOCALMIRROR_H

/* Generated by cbindgen. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum LmStatus {
  LM_STATUS_OK = 0,
  LM_STATUS_NULL_POINTER = 1,
  LM_STATUS_INVALID_UTF8 = 2,
  LM_STATUS_CONFIG = 3,
  LM_STATUS_PARSE = 4,
  LM_STATUS_INSUFFICIENT_DEPTH = 5,
  LM_STATUS_COMPUTATION = 6,
  LM_STATUS_OUT_OF_RANGE = 7,
  LM_STATUS_PANIC = 8,
} LmStatus;

/**
 * Result of a subcommand run.
 */
typedef struct LmReport LmReport;

/**
 * Gromov-Witten invariants keyed by curve class.
 */
typedef struct LmTable LmTable;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Library version as a static string.
 */
const char *lm_version(void);

/**
 * Message of the last failure on this thread, or null. Valid until the next call.
 */
const char *lm_last_error(void);

/**
 * Runs the subcommand described by `config` (`key = value` lines).
 *
 * # Safety
 * `config` must be a NUL-terminated string and `out` a valid pointer.
 */
enum LmStatus lm_run(const char *config, struct LmReport **out);

/**
 * 1 when no check failed, 0 otherwise, -1 for a null handle.
 *
 * # Safety
 * `report` must be null or a handle from [`lm_run`].
 */
int32_t lm_report_passed(const struct LmReport *report);

/**
 * Number of checks in the report.
 *
 * # Safety
 * `report` must be null or a handle from [`lm_run`].
 */
size_t lm_report_check_count(const struct LmReport *report);

/**
 * Structured report as JSON. Free with [`lm_string_free`].
 *
 * # Safety
 * `report` must be null or a handle from [`lm_run`].
 */
char *lm_report_json(const struct LmReport *report);

/**
 * Aligned text rendering of the report. Free with [`lm_string_free`].
 *
 * # Safety
 * `report` must be null or a handle from [`lm_run`].
 */
char *lm_report_text(const struct LmReport *report);

/**
 * # Safety
 * `report` must be null or a handle from [`lm_run`] not yet freed.
 */
void lm_report_free(struct LmReport *report);

/**
 * Runs the pipeline for the geometry described by `config` and keeps its table.
 *
 * # Safety
 * `config` must be a NUL-terminated string and `out` a valid pointer.
 */
enum LmStatus lm_gw_table(const char *config, struct LmTable **out);

/**
 * # Safety
 * `table` must be null or a handle from [`lm_gw_table`].
 */
size_t lm_table_len(const struct LmTable *table);

/**
 * Number of classes whose readouts disagreed.
 *
 * # Safety
 * `table` must be null or a handle from [`lm_gw_table`].
 */
size_t lm_table_conflicts(const struct LmTable *table);

/**
 * Copies the class of entry `index` into `degree` (capacity `cap`) and its
 * invariant, rendered `n/d`, into `*value`. The value string is owned by the
 * table. `*len` receives the number of variables.
 *
 * # Safety
 * `table` must be a handle from [`lm_gw_table`]; `degree` must hold `cap`
 * values; `len` and `value` must be valid pointers.
 */
enum LmStatus lm_table_entry(const struct LmTable *table,
                             size_t index,
                             uint32_t *degree,
                             size_t cap,
                             size_t *len,
                             const char **value);

/**
 * # Safety
 * `table` must be null or a handle from [`lm_gw_table`] not yet freed.
 */
void lm_table_free(struct LmTable *table);

/**
 * Coefficients `q^0..q^degree` of the closed-form mirror map of `X_k`,
 * comma separated. Free with [`lm_string_free`].
 *
 * # Safety
 * `out` must be a valid pointer.
 */
enum LmStatus lm_conj1_mirror_series(int64_t k, uint32_t degree, char **out);

/**
 * # Safety
 * `s` must be null or a string returned by this library not yet freed.
 */
void lm_string_free(char *s);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* LOCALMIRROR_H */
