#ifndef TRISPCL_H
#define TRISPCL_H

/* Generated by cbindgen from src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum TrispclStatus {
  TRISPCL_STATUS_OK = 0,
  /**
   * A required pointer was null.
   */
  TRISPCL_STATUS_NULL_ARGUMENT = 1,
  /**
   * A string argument was not valid UTF-8.
   */
  TRISPCL_STATUS_INVALID_UTF8 = 2,
  /**
   * The input could not be parsed or is structurally malformed.
   */
  TRISPCL_STATUS_INPUT_ERROR = 3,
  /**
   * A mathematical precondition failed.
   */
  TRISPCL_STATUS_FAILURE = 4,
  /**
   * The input was of the wrong kind, e.g. a trisp where a category was
   * expected.
   */
  TRISPCL_STATUS_WRONG_KIND = 5,
  /**
   * A Rust panic was caught; this is a bug.
   */
  TRISPCL_STATUS_PANIC = 6,
} TrispclStatus;

typedef enum TrispclPipeline {
  /**
   * Through the quotient trisp of the barycentric subdivision.
   */
  TRISPCL_PIPELINE_TRISP = 0,
  /**
   * Through the quotient category of the face poset.
   */
  TRISPCL_PIPELINE_CATEGORY = 1,
} TrispclPipeline;

/**
 * Opaque acyclic category.
 */
typedef struct TrispclCategory TrispclCategory;

/**
 * Opaque trisp.
 */
typedef struct TrispclTrisp TrispclTrisp;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * The message of the last failed call on this thread, or null. The
 * pointer stays valid until the next call into the library.
 */
const char *trispcl_last_error(void);

/**
 * Releases a string returned by this library. Null is ignored.
 *
 * # Safety
 * `s` must come from this library and not have been freed.
 */
void trispcl_string_free(char *s);

/**
 * Parses a category or poset file.
 *
 * # Safety
 * `json` must be a NUL-terminated string and `out` a valid pointer.
 */
enum TrispclStatus trispcl_category_from_json(const char *json, struct TrispclCategory **out);

/**
 * # Safety
 * `c` must come from this library and not have been freed. Null is ignored.
 */
void trispcl_category_free(struct TrispclCategory *c);

/**
 * Object and morphism counts (identities excluded).
 *
 * # Safety
 * All pointers must be valid.
 */
enum TrispclStatus trispcl_category_size(const struct TrispclCategory *c,
                                         size_t *objects,
                                         size_t *morphisms);

/**
 * Sets `valid` to whether the category axioms hold and acyclicity holds.
 *
 * # Safety
 * All pointers must be valid.
 */
enum TrispclStatus trispcl_category_validate(const struct TrispclCategory *c, bool *valid);

/**
 * The nerve of a valid category.
 *
 * # Safety
 * All pointers must be valid.
 */
enum TrispclStatus trispcl_nerve(const struct TrispclCategory *c, struct TrispclTrisp **out);

/**
 * Parses a trisp file.
 *
 * # Safety
 * `json` must be a NUL-terminated string and `out` a valid pointer.
 */
enum TrispclStatus trispcl_trisp_from_json(const char *json, struct TrispclTrisp **out);

/**
 * # Safety
 * `t` must come from this library and not have been freed. Null is ignored.
 */
void trispcl_trisp_free(struct TrispclTrisp *t);

/**
 * Number of `d`-simplices; 0 above the top dimension.
 *
 * # Safety
 * All pointers must be valid.
 */
enum TrispclStatus trispcl_trisp_count(const struct TrispclTrisp *t, size_t d, size_t *out);

/**
 * # Safety
 * All pointers must be valid.
 */
enum TrispclStatus trispcl_trisp_euler_characteristic(const struct TrispclTrisp *t, int64_t *out);

/**
 * The trisp in the JSON file format.
 *
 * # Safety
 * All pointers must be valid.
 */
enum TrispclStatus trispcl_trisp_to_json(const struct TrispclTrisp *t, char **out);

/**
 * Checks a closure map given as JSON; `holds` reports the outcome.
 *
 * # Safety
 * All pointers must be valid and `map_json` NUL-terminated.
 */
enum TrispclStatus trispcl_closure_verify(const struct TrispclTrisp *t,
                                          const char *map_json,
                                          bool *holds);

/**
 * Collapse certificate of a verified closure map, as JSON.
 *
 * # Safety
 * All pointers must be valid and `map_json` NUL-terminated.
 */
enum TrispclStatus trispcl_closure_certify(const struct TrispclTrisp *t,
                                           const char *map_json,
                                           char **out);

/**
 * Runs a graph-complex pipeline for `n` in 3..=5 and returns its report as
 * JSON.
 *
 * # Safety
 * `out` must be a valid pointer.
 */
enum TrispclStatus trispcl_dgn_pipeline(size_t n, enum TrispclPipeline pipeline, char **out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* TRISPCL_H */
