#ifndef PARANIL_H
#define PARANIL_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum ParanilStatus {
  PARANIL_STATUS_OK = 0,
  PARANIL_STATUS_NULL_POINTER = 1,
  PARANIL_STATUS_INVALID_UTF8 = 2,
  PARANIL_STATUS_PARSE = 3,
  PARANIL_STATUS_NOT_FOUND = 4,
  PARANIL_STATUS_COMPUTATION = 5,
  PARANIL_STATUS_PANIC = 6,
} ParanilStatus;

/**
 * Opaque handle to a polycyclic presentation.
 */
typedef struct ParanilGroup ParanilGroup;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the last failed call on this thread, or null. Owned by the library.
 */
const char *paranil_last_error(void);

/**
 * Library version as a static string.
 */
const char *paranil_version(void);

/**
 * Parses a group file and returns the group called `name`, or the last group
 * when `name` is null.
 *
 * # Safety
 * `text` and a non-null `name` must be nul-terminated; `out` must be writable.
 */
enum ParanilStatus paranil_group_from_text(const char *text,
                                           const char *name,
                                           struct ParanilGroup **out);

/**
 * # Safety
 * `group` must come from [`paranil_group_from_text`] and not be freed twice. Null is ignored.
 */
void paranil_group_free(struct ParanilGroup *group);

/**
 * # Safety
 * `group` must be a live handle; `out` must be writable.
 */
enum ParanilStatus paranil_group_name(const struct ParanilGroup *group, char **out);

/**
 * # Safety
 * `group` must be a live handle; `out` must be writable.
 */
enum ParanilStatus paranil_group_generator_count(const struct ParanilGroup *group, size_t *out);

/**
 * # Safety
 * `group` must be a live handle; `out` must be writable.
 */
enum ParanilStatus paranil_group_hirsch_length(const struct ParanilGroup *group, size_t *out);

/**
 * # Safety
 * `group` must be a live handle; `out` must be writable.
 */
enum ParanilStatus paranil_group_is_consistent(const struct ParanilGroup *group, bool *out);

/**
 * The torsion primes of the lower central steps, as `{}` or `{2, 3}`.
 *
 * # Safety
 * `group` must be a live handle; `out` must be writable.
 */
enum ParanilStatus paranil_group_tau(const struct ParanilGroup *group, char **out);

/**
 * Invariants of `γ_i/γ_{i+1}` for `i = 1..=depth`, one per line.
 *
 * # Safety
 * `group` must be a live handle; `out` must be writable.
 */
enum ParanilStatus paranil_group_lower_central_steps(const struct ParanilGroup *group,
                                                     size_t depth,
                                                     char **out);

/**
 * Runs the command-line tool in process. `argv[0]` is the program name. The
 * tool's exit code (0 pass, 1 fail, 2 error) goes to `exit_code`, its output to
 * `report`; the status is `OK` whenever the tool ran.
 *
 * # Safety
 * `argv` must hold `argc` nul-terminated strings; the out pointers must be writable.
 */
enum ParanilStatus paranil_run(int argc, const char *const *argv, int *exit_code, char **report);

/**
 * # Safety
 * `s` must come from this library and not be freed twice. Null is ignored.
 */
void paranil_string_free(char *s);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* PARANIL_H */
