#ifndef UNIFACT_H
#define UNIFACT_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/*
 Status codes. Non-negative values mirror the CLI exit codes.
 */
typedef enum UnifactStatus {
  UNIFACT_STATUS_OK = 0,
  /*
   Malformed input (schema, field, group or element errors).
   */
  UNIFACT_STATUS_INPUT_ERROR = 1,
  /*
   Well-formed input for which the requested object does not exist.
   */
  UNIFACT_STATUS_REFUSAL = 2,
  UNIFACT_STATUS_NULL_POINTER = -1,
  UNIFACT_STATUS_INVALID_UTF8 = -2,
  UNIFACT_STATUS_INVALID_JSON = -3,
} UnifactStatus;

/*
 A finite field descriptor.
 */
typedef struct UnifactField UnifactField;

/*
 Result of [`unifact_run`]: exit status and JSON report.
 */
typedef struct UnifactReport UnifactReport;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/*
 Message describing the last failure on this thread; empty if none.
 The pointer stays valid until the next failing call on the same thread.
 */
const char *unifact_last_error(void);

/*
 Run a job given as JSON, e.g.
 `{"command":"radical","field":3,"group":"S3"}`.

 On return `*out` holds a report handle (also for refusals and input
 errors, whose report carries an `error` object) unless the status is
 negative.

 # Safety
 `job_json` must be a NUL-terminated string; `out` must be writable.
 */
enum UnifactStatus unifact_run(const char *job_json, struct UnifactReport **out);

/*
 Exit status recorded in a report, or -1 for a null handle.

 # Safety
 `report` must be null or a live handle from [`unifact_run`].
 */
int32_t unifact_report_status(const struct UnifactReport *report);

/*
 JSON text of a report, borrowed from the handle.

 # Safety
 `report` must be null or a live handle from [`unifact_run`].
 */
const char *unifact_report_json(const struct UnifactReport *report);

/*
 # Safety
 `report` must be null or a handle from [`unifact_run`] not yet freed.
 */
void unifact_report_free(struct UnifactReport *report);

/*
 Check a certificate (or a full report carrying one).

 # Safety
 `certificate_json` must be a NUL-terminated string.
 */
enum UnifactStatus unifact_verify(const char *certificate_json);

/*
 GF(p^k) with the canonical modulus.

 # Safety
 `out` must be writable.
 */
enum UnifactStatus unifact_field_new(uint32_t p, uint32_t k, struct UnifactField **out);

/*
 Number of elements of the field, or 0 for a null handle.

 # Safety
 `field` must be null or a live handle.
 */
uint32_t unifact_field_order(const struct UnifactField *field);

/*
 Sum of two elements given by packed index `sum c_i p^i`.

 # Safety
 `field` must be a live handle and `out` writable.
 */
enum UnifactStatus unifact_field_add(const struct UnifactField *field,
                                     uint32_t a,
                                     uint32_t b,
                                     uint32_t *out);

/*
 Product of two elements given by packed index.

 # Safety
 `field` must be a live handle and `out` writable.
 */
enum UnifactStatus unifact_field_mul(const struct UnifactField *field,
                                     uint32_t a,
                                     uint32_t b,
                                     uint32_t *out);

/*
 Quotient `a / b`; fails with `UNIFACT_STATUS_INPUT_ERROR` when `b = 0`.

 # Safety
 `field` must be a live handle and `out` writable.
 */
enum UnifactStatus unifact_field_div(const struct UnifactField *field,
                                     uint32_t a,
                                     uint32_t b,
                                     uint32_t *out);

/*
 # Safety
 `field` must be null or a handle from [`unifact_field_new`] not yet freed.
 */
void unifact_field_free(struct UnifactField *field);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* UNIFACT_H */
