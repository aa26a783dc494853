#ifndef EALIE_H
#define EALIE_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum EalieStatus {
  EALIE_STATUS_OK = 0,
  // At least one verification suite reported a failure.
  EALIE_STATUS_SUITE_FAILED = 1,
  EALIE_STATUS_INVALID_ARGUMENT = 2,
  EALIE_STATUS_IO = 3,
  EALIE_STATUS_NULL_POINTER = 4,
  EALIE_STATUS_INTERNAL = 5,
} EalieStatus;

// A built algebra together with its decomposed window.
typedef struct EalieInstance EalieInstance;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Build an instance from a JSON object with the same fields as the CLI
// flags, e.g. `{"construction":"affinized","ell":2,"nu":2,"q":[-1],"window":2}`.
//
// # Safety
// `spec_json` must be a nul-terminated string and `out` a valid pointer.
enum EalieStatus ealie_instance_new(const char *spec_json, struct EalieInstance **out);

// Build the skew-hermitian quantum torus algebra directly. `q_upper` holds
// the strict upper triangle of the sign matrix row by row and may be null
// when `q_len` is zero.
//
// # Safety
// `q_upper` must point to `q_len` readable values and `out` must be valid.
enum EalieStatus ealie_instance_new_quantum_torus(size_t ell,
                                                  size_t nu,
                                                  const int64_t *q_upper,
                                                  size_t q_len,
                                                  int64_t window,
                                                  struct EalieInstance **out);

// # Safety
// `inst` must come from one of the constructors and not be used afterwards.
void ealie_instance_free(struct EalieInstance *inst);

// Run the comma separated `suites` (empty or null for the defaults) and
// return the JSON report. Returns `SuiteFailed` when the report is
// produced but some check failed.
//
// # Safety
// `inst` must be a live handle and `out_json` a valid pointer.
enum EalieStatus ealie_check(const struct EalieInstance *inst, const char *suites, char **out_json);

// Root records of the window as JSON lines, followed by a footer line.
//
// # Safety
// `inst` must be a live handle and `out` a valid pointer.
enum EalieStatus ealie_export_string(struct EalieInstance *inst, char **out);

// Write the export to `path`.
//
// # Safety
// `inst` must be a live handle and `path` a nul-terminated string.
enum EalieStatus ealie_export(struct EalieInstance *inst, const char *path);

// Number of roots (including zero) in the window.
//
// # Safety
// `inst` must be a live handle and `out` a valid pointer.
enum EalieStatus ealie_root_count(struct EalieInstance *inst, size_t *out);

// The sign kappa(sigma) for the sign matrix with the given strict upper
// triangle. `sigma` has `nu` entries.
//
// # Safety
// `q_upper` must hold `nu(nu-1)/2` values, `sigma` `nu` values, and `out`
// must be valid.
enum EalieStatus ealie_kappa(size_t nu, const int64_t *q_upper, const int64_t *sigma, int32_t *out);

// Message for the most recent failure on this thread. The pointer stays
// valid until the next failing call on the same thread.
const char *ealie_last_error(void);

// # Safety
// `s` must come from this library, or be null.
void ealie_string_free(char *s);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* EALIE_H */
