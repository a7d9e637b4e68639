#ifndef PERSILAT_H
#define PERSILAT_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

// Result of every fallible call.
typedef enum PersilatStatus {
  PERSILAT_STATUS_OK = 0,
  PERSILAT_STATUS_NULL_POINTER = 1,
  PERSILAT_STATUS_INVALID_UTF8 = 2,
  // Malformed JSON or a file that does not match the format.
  PERSILAT_STATUS_PARSE_ERROR = 3,
  // Well-formed file describing an invalid diagram.
  PERSILAT_STATUS_INVALID_DIAGRAM = 4,
  // Unknown node, wrong shape or another domain error.
  PERSILAT_STATUS_DOMAIN_ERROR = 5,
  PERSILAT_STATUS_BUDGET_EXCEEDED = 6,
  // A Rust panic was caught at the boundary.
  PERSILAT_STATUS_INTERNAL = 7,
} PersilatStatus;

// Opaque diagram handle.
typedef struct PersilatDiagram PersilatDiagram;

// Outcome of a pairwise rank computation.
typedef struct PersilatRankReport {
  size_t dim_a;
  size_t dim_b;
  size_t dim_meet;
  size_t dim_join;
  size_t rank;
  bool leg_agreement;
  bool ses_ok;
  size_t iterations;
} PersilatRankReport;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Parse a JSON diagram. On success `*out` owns a new handle.
//
// # Safety
// `json` must be a NUL-terminated string and `out` a writable pointer.
enum PersilatStatus persilat_diagram_parse(const char *json,
                                           bool field_check,
                                           struct PersilatDiagram **out);

// Release a handle. NULL is ignored.
//
// # Safety
// `d` must come from [`persilat_diagram_parse`] and not be used afterwards.
void persilat_diagram_free(struct PersilatDiagram *d);

// Number of nodes, or 0 for NULL.
//
// # Safety
// `d` must be NULL or a live handle.
size_t persilat_diagram_node_count(const struct PersilatDiagram *d);

// Pairwise rank invariant of nodes `a` and `b`.
//
// # Safety
// `d` must be a live handle, `a` and `b` NUL-terminated, `out` writable.
enum PersilatStatus persilat_rank(const struct PersilatDiagram *d,
                                  const char *a,
                                  const char *b,
                                  struct PersilatRankReport *out);

// Rank of the largest injective persistence map of the whole diagram.
//
// # Safety
// `d` must be a live handle and `rank` writable.
enum PersilatStatus persilat_largest_injective(const struct PersilatDiagram *d, size_t *rank);

// Zig-zag rank between nodes `a` and `b` of a zig-zag-tagged diagram.
// Both must sit at source positions of the normalized zig-zag.
//
// # Safety
// `d` must be a live handle, `a` and `b` NUL-terminated, `rank` writable.
enum PersilatStatus persilat_zigzag_rank(const struct PersilatDiagram *d,
                                         const char *a,
                                         const char *b,
                                         size_t *rank);

// Heyting implication `a ⇒ b` as a normal-form string.
//
// # Safety
// `d` must be a live handle, `a` and `b` NUL-terminated, `out` writable.
enum PersilatStatus persilat_implies(const struct PersilatDiagram *d,
                                     const char *a,
                                     const char *b,
                                     char **out);

// Hasse diagram of the generated lattice as DOT text, enumerating at most
// `budget` elements.
//
// # Safety
// `d` must be a live handle and `out` writable.
enum PersilatStatus persilat_hasse_dot(const struct PersilatDiagram *d, size_t budget, char **out);

// Release a string returned by this library. NULL is ignored.
//
// # Safety
// `s` must come from this library and not be used afterwards.
void persilat_string_free(char *s);

// Message of the last failure on this thread, or NULL. The pointer stays
// valid until the next call into this library on the same thread.
const char *persilat_last_error(void);

// Library version, a static string.
const char *persilat_version(void);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* PERSILAT_H */
