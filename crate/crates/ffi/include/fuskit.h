/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#ifndef FUSKIT_H
#define FUSKIT_H

#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>

// Result codes shared by every entry point.
typedef enum FuskitStatus {
  FUSKIT_STATUS_OK = 0,
  // A required pointer argument was null.
  FUSKIT_STATUS_NULL_ARGUMENT = 1,
  // An input string was not valid UTF-8.
  FUSKIT_STATUS_INVALID_UTF8 = 2,
  // Ring JSON or a family spec failed to parse or build.
  FUSKIT_STATUS_PARSE = 3,
  // A basis index was out of range.
  FUSKIT_STATUS_OUT_OF_RANGE = 4,
  // The computation is undefined for this ring, e.g. classification of a pointed ring.
  FUSKIT_STATUS_NOT_APPLICABLE = 5,
  // A numeric or internal failure inside the library.
  FUSKIT_STATUS_INTERNAL = 6,
  // The library panicked; the handle arguments should be considered poisoned.
  FUSKIT_STATUS_PANIC = 7,
} FuskitStatus;

// Opaque fusion ring handle.
typedef struct FuskitRing FuskitRing;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Message for the most recent failure on this thread, or null after a success.
// The pointer stays valid until the next call into the library on the same thread.
const char *fuskit_last_error(void);

// Library version as a static string.
const char *fuskit_version(void);

// Parses a ring in the JSON exchange format.
//
// # Safety
// `json` must be a valid NUL-terminated string; `out` must be writable.
enum FuskitStatus fuskit_ring_from_json(const char *json, struct FuskitRing **out);

// Builds a ring from a family spec, in JSON (`{"family":"psu2_6"}`) or
// shorthand (`fib_extension(S3)`) form.
//
// # Safety
// `spec` must be a valid NUL-terminated string; `out` must be writable.
enum FuskitStatus fuskit_ring_construct(const char *spec, struct FuskitRing **out);

// Releases a handle. Null is ignored.
//
// # Safety
// `ring` must be null or a handle from this library that has not been freed.
void fuskit_ring_free(struct FuskitRing *ring);

// Releases a string returned by the library. Null is ignored.
//
// # Safety
// `s` must be null or a string from this library that has not been freed.
void fuskit_string_free(char *s);

// # Safety
// `ring` must be a live handle; `out` must be writable.
enum FuskitStatus fuskit_ring_rank(const struct FuskitRing *ring, uintptr_t *out);

// Copies the label of basis element `i` into a new string.
//
// # Safety
// `ring` must be a live handle; `out` must be writable.
enum FuskitStatus fuskit_ring_label(const struct FuskitRing *ring, uintptr_t i, char **out);

// `N_ij^k` by basis index.
//
// # Safety
// `ring` must be a live handle; `out` must be writable.
enum FuskitStatus fuskit_ring_structure_constant(const struct FuskitRing *ring,
                                                 uintptr_t i,
                                                 uintptr_t j,
                                                 uintptr_t k,
                                                 uint32_t *out);

// Checks the fusion-ring axioms; `pass` receives the verdict. When
// `report` is non-null it receives the full JSON report.
//
// # Safety
// `ring` must be a live handle; `pass` must be writable; `report` must be null or writable.
enum FuskitStatus fuskit_ring_validate(const struct FuskitRing *ring, bool *pass, char **report);

// Canonical JSON serialization.
//
// # Safety
// `ring` must be a live handle; `out` must be writable.
enum FuskitStatus fuskit_ring_to_json(const struct FuskitRing *ring, char **out);

// Frobenius-Perron dimension of basis element `i`. `value` receives a
// double; `exact`, when non-null, receives the exact form such as
// `1/2+1/2*sqrt(5)`, or null if the dimension was not recognized exactly.
//
// # Safety
// `ring` must be a live handle; `value` must be writable; `exact` must be null or writable.
enum FuskitStatus fuskit_ring_fpdim(const struct FuskitRing *ring,
                                    uintptr_t i,
                                    double *value,
                                    char **exact);

// Classification summary as JSON, the same document `fuskit classify` prints.
//
// # Safety
// `ring` must be a live handle; `out` must be writable.
enum FuskitStatus fuskit_ring_classify_json(const struct FuskitRing *ring, char **out);

// Universal grading as JSON: grading group, components and trivial component.
//
// # Safety
// `ring` must be a live handle; `out` must be writable.
enum FuskitStatus fuskit_ring_grading_json(const struct FuskitRing *ring, char **out);

// Solutions `3 <= a <= b <= bound` of `cos²(π/a) + cos²(π/b) = (5+√5)/8`
// and the three-term analogue, as `{"pairs":[[3,5]],"triples":[]}`.
// Bounds below 10 are rejected with `FUSKIT_STATUS_NOT_APPLICABLE`.
//
// # Safety
// `out` must be writable.
enum FuskitStatus fuskit_cosine_search_json(uint32_t bound, char **out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* FUSKIT_H */
