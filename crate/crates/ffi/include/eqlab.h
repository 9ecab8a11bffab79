#ifndef EQLAB_H
#define EQLAB_H

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Status codes mirroring the CLI exit codes.
 */
typedef enum EqlabStatus {
  EQLAB_STATUS_OK = 0,
  EQLAB_STATUS_COUNTEREXAMPLE = 1,
  EQLAB_STATUS_PARSE_ERROR = 2,
  EQLAB_STATUS_CAP_EXCEEDED = 3,
  EQLAB_STATUS_UNKNOWN_OBJECT = 4,
  EQLAB_STATUS_NULL_ARGUMENT = 5,
  EQLAB_STATUS_PANIC = 6,
} EqlabStatus;

/**
 * An opaque loaded instance.
 */
typedef struct EqlabInstance EqlabInstance;

/**
 * An opaque suite report.
 */
typedef struct EqlabReport EqlabReport;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * The message of the most recent failure on this thread. Valid until
 * the next failing call; never null.
 */
const char *eqlab_last_error_message(void);

/**
 * Parse an instance from JSON text.
 *
 * # Safety
 * `json` must be a valid NUL-terminated string and `out` a valid
 * pointer; on `Ok` the caller owns the handle.
 */
enum EqlabStatus eqlab_instance_parse(const char *json, struct EqlabInstance **out);

/**
 * Load an instance file from a path.
 *
 * # Safety
 * `path` must be a valid NUL-terminated string and `out` a valid
 * pointer; on `Ok` the caller owns the handle.
 */
enum EqlabStatus eqlab_instance_load(const char *path, struct EqlabInstance **out);

/**
 * Free an instance handle. Null is ignored.
 *
 * # Safety
 * The handle must come from this library and not be freed twice.
 */
void eqlab_instance_free(struct EqlabInstance *instance);

/**
 * Run a suite (`axioms`, `equ-equivalence`, `eff-quotient`, or `all`).
 * Returns `Counterexample` when checks ran and at least one failed; a
 * report handle is produced in both that case and `Ok`.
 *
 * # Safety
 * `instance` and `suite` must be valid; on `Ok`/`Counterexample` the
 * caller owns the report handle.
 */
enum EqlabStatus eqlab_run_suite(const struct EqlabInstance *instance,
                                 const char *suite,
                                 struct EqlabReport **out);

/**
 * Did every check in the report pass?
 *
 * # Safety
 * `report` must be a valid handle.
 */
bool eqlab_report_passed(const struct EqlabReport *report);

/**
 * Render the report as text. The caller frees the string.
 *
 * # Safety
 * `report` and `out` must be valid pointers.
 */
enum EqlabStatus eqlab_report_text(const struct EqlabReport *report, char **out);

/**
 * Render the report as JSON. The caller frees the string.
 *
 * # Safety
 * `report` and `out` must be valid pointers.
 */
enum EqlabStatus eqlab_report_json(const struct EqlabReport *report, char **out);

/**
 * Free a report handle. Null is ignored.
 *
 * # Safety
 * The handle must come from this library and not be freed twice.
 */
void eqlab_report_free(struct EqlabReport *report);

/**
 * Render a declared object as DOT. The caller frees the string.
 *
 * # Safety
 * All pointers must be valid.
 */
enum EqlabStatus eqlab_emit_dot(const struct EqlabInstance *instance, const char *name, char **out);

/**
 * Free a string returned by this library. Null is ignored.
 *
 * # Safety
 * The pointer must come from this library and not be freed twice.
 */
void eqlab_string_free(char *s);

#ifdef __cplusplus
} // extern "C"
#endif // __cplusplus

#endif /* EQLAB_H */
