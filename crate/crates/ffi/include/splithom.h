#ifndef SPLITHOM_H
#define SPLITHOM_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

// Status codes. The first six match the command-line exit codes.
typedef enum SplithomStatus {
  SPLITHOM_STATUS_OK = 0,
  SPLITHOM_STATUS_USAGE = 1,
  SPLITHOM_STATUS_PARSE = 2,
  SPLITHOM_STATUS_VALIDATION = 3,
  SPLITHOM_STATUS_NOT_SPLIT = 4,
  SPLITHOM_STATUS_INTERNAL = 5,
  SPLITHOM_STATUS_NULL_POINTER = 6,
  SPLITHOM_STATUS_PANIC = 7,
} SplithomStatus;

// Opaque algebra handle.
typedef struct SplithomAlgebra SplithomAlgebra;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Parses an algebra document. On success `*out` owns a handle to be
// released with `splithom_algebra_free`.
//
// # Safety
// `json` must be a valid NUL-terminated string and `out` a valid pointer.
enum SplithomStatus splithom_algebra_from_json(const char *json,
                                               bool non_regular,
                                               struct SplithomAlgebra **out);

// Builds a catalog fixture together with its MAGSA. `param` 0 selects the
// entry's default.
//
// # Safety
// `name` must be a valid NUL-terminated string and `out` a valid pointer.
enum SplithomStatus splithom_algebra_from_catalog(const char *name,
                                                  uint32_t param,
                                                  struct SplithomAlgebra **out);

// Releases a handle. Null is ignored.
//
// # Safety
// `alg` must come from this library and not be used afterwards.
void splithom_algebra_free(struct SplithomAlgebra *alg);

// Dimension of the algebra, or 0 for a null handle.
//
// # Safety
// `alg` must be null or a live handle.
size_t splithom_algebra_dim(const struct SplithomAlgebra *alg);

// Replaces the MAGSA by the span of the given basis vectors.
//
// # Safety
// `alg` must be a live handle; `indices` must point to `len` values.
enum SplithomStatus splithom_algebra_set_magsa(struct SplithomAlgebra *alg,
                                               const size_t *indices,
                                               size_t len);

// Checks the axioms; `*passed` receives the result.
//
// # Safety
// `alg` must be a live handle and `passed` a valid pointer.
enum SplithomStatus splithom_validate(const struct SplithomAlgebra *alg, bool *passed);

// Runs one of `validate`, `roots`, `connections`, `decompose`,
// `simplicity` or `components` and stores its JSON report in `*out`, even
// when the returned status is not `OK`. Free it with `splithom_string_free`.
//
// # Safety
// `alg` must be a live handle, `command` a NUL-terminated string and `out`
// a valid pointer.
enum SplithomStatus splithom_report_json(const struct SplithomAlgebra *alg,
                                         const char *command,
                                         char **out);

// Releases a string returned by this library. Null is ignored.
//
// # Safety
// `s` must come from this library and not be used afterwards.
void splithom_string_free(char *s);

// Message for the last failed call on this thread, or null. Valid until
// the next call into the library.
const char *splithom_last_error_message(void);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* SPLITHOM_H */
