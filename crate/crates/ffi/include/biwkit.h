#ifndef BIWKIT_H
#define BIWKIT_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

// Status codes. The nonzero values 2, 3 and 4 agree with the CLI exit codes.
typedef enum BiwkitStatus {
  BIWKIT_STATUS_OK = 0,
  BIWKIT_STATUS_VERIFICATION_FAILED = 2,
  BIWKIT_STATUS_INVALID_PARAMETERS = 3,
  BIWKIT_STATUS_NOT_CONVERGED = 4,
  BIWKIT_STATUS_NULL_POINTER = 10,
  BIWKIT_STATUS_INVALID_UTF8 = 11,
  BIWKIT_STATUS_OUT_OF_RANGE = 12,
  BIWKIT_STATUS_PANIC = 13,
} BiwkitStatus;

// Which polynomial family a [`BiwkitFamily`] holds.
typedef enum BiwkitFamilyKind {
  BIWKIT_FAMILY_KIND_BANNAI_ITO = 0,
  BIWKIT_FAMILY_KIND_MODIFIED = 1,
  BIWKIT_FAMILY_KIND_NONSYM_WILSON = 2,
} BiwkitFamilyKind;

// Opaque list of polynomials of degrees 0..=n_max.
typedef struct BiwkitFamily BiwkitFamily;

// Opaque parameter set (a, b, c, d).
typedef struct BiwkitParams BiwkitParams;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Message for the last failed call on this thread, or null. The pointer stays
// valid until the next library call on the same thread.
const char *biwkit_last_error(void);

// Releases a string returned by this library. Null is ignored.
//
// # Safety
// `s` must come from this library and not have been freed already.
void biwkit_string_free(char *s);

// Schema tag of the JSON documents, e.g. "biwkit/1". Static; do not free.
const char *biwkit_schema(void);

// Parses "a,b,c,d" where each entry is an exact complex rational such as `1/2-3i`.
//
// # Safety
// `text` must be a nul-terminated string; `out` must be writable.
enum BiwkitStatus biwkit_params_parse(const char *text, struct BiwkitParams **out);

// Parses a real quadruple "alpha,beta,gamma,delta" into a = alpha + i beta,
// b = gamma + i delta, c = conj(a), d = conj(b).
//
// # Safety
// As for [`biwkit_params_parse`].
enum BiwkitStatus biwkit_params_parse_real(const char *text, struct BiwkitParams **out);

// Parses DAHA parameters "t0,t1,u0,u1" and maps them to (a, b, c, d).
//
// # Safety
// As for [`biwkit_params_parse`].
enum BiwkitStatus biwkit_params_parse_daha(const char *text, struct BiwkitParams **out);

// # Safety
// `p` must be null or a handle from this library that has not been freed.
void biwkit_params_free(struct BiwkitParams *p);

// Parameters as JSON `{"a":{"re","im"},...}` with exact rational strings.
//
// # Safety
// `p` must be a live handle; `out` must be writable.
enum BiwkitStatus biwkit_params_to_json(const struct BiwkitParams *p, char **out);

// Exact eigenvalue of degree `n` under L, as JSON `{"re","im"}`.
//
// # Safety
// `p` must be a live handle; `out` must be writable.
enum BiwkitStatus biwkit_bi_eigenvalue(const struct BiwkitParams *p, size_t n, char **out);

// Builds degrees 0..=n_max of the family named by a [`BiwkitFamilyKind`] value. The Wilson family uses the
// DAHA parameters obtained from the handle's (a, b, c, d).
//
// # Safety
// `p` must be a live handle; `out` must be writable.
enum BiwkitStatus biwkit_family_new(const struct BiwkitParams *p,
                                    int kind,
                                    size_t n_max,
                                    struct BiwkitFamily **out);

// # Safety
// `f` must be null or a handle from this library that has not been freed.
void biwkit_family_free(struct BiwkitFamily *f);

// Number of polynomials held (n_max + 1). Returns 0 for a null handle.
//
// # Safety
// `f` must be null or a live handle.
size_t biwkit_family_len(const struct BiwkitFamily *f);

// Coefficients of the degree-`n` member as a JSON array in ascending powers.
//
// # Safety
// `f` must be a live handle; `out` must be writable.
enum BiwkitStatus biwkit_family_polynomial_json(const struct BiwkitFamily *f, size_t n, char **out);

// Runs the command-line driver on `argv[0..argc]` (argv[0] is the program
// name) and returns its JSON document in `out_json`. The return value is the
// exit code the binary would have produced; it is nonnegative for any run
// that produced a document and -1 if an argument pointer was null or not UTF-8.
//
// # Safety
// `argv` must point to `argc` nul-terminated strings; `out_json` must be writable.
int biwkit_run(int argc, const char *const *argv, char **out_json);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* BIWKIT_H */
