#ifndef UROD_H
#define UROD_H

/* Generated by cbindgen from src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

// Result codes; `Pass`, `Fail` and `Usage` match the command-line exit codes.
typedef enum UrodCode {
  UROD_CODE_PASS = 0,
  UROD_CODE_FAIL = 1,
  UROD_CODE_USAGE = 2,
  UROD_CODE_NULL_ARGUMENT = 3,
  UROD_CODE_INVALID_UTF8 = 4,
  UROD_CODE_IO = 5,
  UROD_CODE_INTERNAL = 6,
} UrodCode;

// Outcome stored in a report handle.
typedef enum UrodStatus {
  UROD_STATUS_PASS = 0,
  UROD_STATUS_FAIL = 1,
  UROD_STATUS_SKIPPED = 2,
} UrodStatus;

// A finished single-check or suite report.
typedef struct UrodReport UrodReport;

// A check request under construction.
typedef struct UrodRequest UrodRequest;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Library version, static.
const char *urod_version(void);

// Message for the last failing call on this thread; empty if none. Valid until the next call.
const char *urod_last_error(void);

// Number of registered checks.
uintptr_t urod_check_count(void);

// Id of check `index`, static; NULL when out of range.
const char *urod_check_id(uintptr_t index);

// New request for check `id` with default order, parameters and seed. NULL on a NULL or
// non-UTF-8 id; unknown ids are reported by `urod_request_validate` and `urod_run`.
//
// # Safety
// `id` must be NULL or a nul-terminated string.
struct UrodRequest *urod_request_new(const char *id);

// # Safety
// `r` must be NULL or a handle from `urod_request_new` not yet freed.
void urod_request_free(struct UrodRequest *r);

// # Safety
// `r` must be a live request handle.
enum UrodCode urod_request_set_order(struct UrodRequest *r, int64_t order);

// # Safety
// `r` must be a live request handle.
enum UrodCode urod_request_set_seed(struct UrodRequest *r, uint64_t seed);

// Set `name=value`; values are checked by `urod_request_validate`.
//
// # Safety
// `r` must be a live request handle; `name` and `value` nul-terminated strings.
enum UrodCode urod_request_set_param(struct UrodRequest *r, const char *name, const char *value);

// Cache directory for this request; NULL disables caching.
//
// # Safety
// `r` must be a live request handle; `dir` NULL or a nul-terminated string.
enum UrodCode urod_request_set_cache_dir(struct UrodRequest *r, const char *dir);

// `Pass` when the request is valid, `Usage` otherwise; nothing is computed.
//
// # Safety
// `r` must be a live request handle.
enum UrodCode urod_request_validate(const struct UrodRequest *r);

// Run a request. On `Pass` or `Fail` a report is stored in `*out`; otherwise `*out` is NULL.
//
// # Safety
// `r` must be a live request handle and `out` a valid pointer.
enum UrodCode urod_run(const struct UrodRequest *r, struct UrodReport **out);

// Run the `quick` or `full` suite.
//
// # Safety
// `name` must be a nul-terminated string, `cache_dir` NULL or one, and `out` a valid pointer.
enum UrodCode urod_run_suite(const char *name,
                             uint64_t seed,
                             const char *cache_dir,
                             struct UrodReport **out);

// Aggregate status of a report.
//
// # Safety
// `r` must be a live report handle.
enum UrodStatus urod_report_status(const struct UrodReport *r);

// Versioned JSON form of a report; free with `urod_string_free`. NULL on a NULL handle.
//
// # Safety
// `r` must be NULL or a live report handle.
char *urod_report_json(const struct UrodReport *r);

// # Safety
// `r` must be NULL or a handle from `urod_run`/`urod_run_suite` not yet freed.
void urod_report_free(struct UrodReport *r);

// # Safety
// `s` must be NULL or a string returned by this library and not yet freed.
void urod_string_free(char *s);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* UROD_H */
