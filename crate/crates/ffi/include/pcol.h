#ifndef PCOL_H
#define PCOL_H

/* Generated by cbindgen. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

// Result of every fallible call.
typedef enum PcolStatus {
  PCOL_STATUS_OK = 0,
  PCOL_STATUS_NULL_POINTER = 1,
  PCOL_STATUS_INVALID_ARGUMENT = 2,
  PCOL_STATUS_TOO_LARGE = 3,
  PCOL_STATUS_PARSE = 4,
  PCOL_STATUS_IO = 5,
  PCOL_STATUS_CONSTRUCTION_FAILED = 6,
  PCOL_STATUS_BUFFER_TOO_SMALL = 7,
  PCOL_STATUS_PANIC = 8,
} PcolStatus;

// A coloring of H(n,q).
typedef struct PcolColoring PcolColoring;

// The outcome of verifying a coloring.
typedef struct PcolReport PcolReport;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Message for the last failed call on this thread, or null. Valid until the
// next failing call on the same thread.
const char *pcol_last_error(void);

// Reed–Muller-like coloring of H(q^s, q) with q^(s+1) colors.
//
// # Safety
// `out` must be a valid pointer to writable storage for one handle.
enum PcolStatus pcol_construct_rm(uint64_t q, uint32_t s, struct PcolColoring **out);

// Union of `count` consecutive Hamming-code cosets, starting at `start`, in H(2^m - 1, 2).
//
// # Safety
// `out` must be a valid pointer to writable storage for one handle.
enum PcolStatus pcol_construct_hamming_union(uint32_t m,
                                             uint32_t start,
                                             uint32_t count,
                                             struct PcolColoring **out);

// Perfect 2-coloring with quotient [[n-b, b], [c, n-c]] in which every argument is essential.
//
// # Safety
// `out` must be a valid pointer to writable storage for one handle.
enum PcolStatus pcol_construct_bc(uint64_t b, uint64_t c, struct PcolColoring **out);

// Boolean function of density r/s and degree e*s/2 in which every variable is essential.
//
// # Safety
// `out` must be a valid pointer to writable storage for one handle.
enum PcolStatus pcol_construct_boolean(uint64_t r,
                                       uint64_t s,
                                       uint64_t e,
                                       struct PcolColoring **out);

// Read a text or binary PCOL file.
//
// # Safety
// `path` must be a nul-terminated string and `out` valid for one handle.
enum PcolStatus pcol_read_file(const char *path, struct PcolColoring **out);

// Write a coloring to `path`, as binary when `binary` is nonzero.
//
// # Safety
// `c` must be a live handle and `path` a nul-terminated string.
enum PcolStatus pcol_write_file(const struct PcolColoring *c, const char *path, int32_t binary);

// Write q, n and k of a coloring. Any of the out pointers may be null.
//
// # Safety
// `c` must be a live handle; non-null out pointers must be writable.
enum PcolStatus pcol_coloring_params(const struct PcolColoring *c,
                                     uint32_t *q,
                                     uint64_t *n,
                                     uint32_t *k);

// Color of the word `word[0..len]`, position 0 first. Works for any n,
// including colorings too large to tabulate.
//
// # Safety
// `c` must be a live handle, `word` readable for `len` bytes, `color` writable.
enum PcolStatus pcol_coloring_eval(const struct PcolColoring *c,
                                   const uint8_t *word,
                                   uintptr_t len,
                                   uint32_t *color);

// Release a coloring. Null is ignored.
//
// # Safety
// `c` must be null or a handle not yet freed.
void pcol_coloring_free(struct PcolColoring *c);

// Exhaustively verify a coloring. `threads == 0` uses every core.
//
// # Safety
// `c` must be a live handle and `out` valid for one handle.
enum PcolStatus pcol_verify(const struct PcolColoring *c,
                            int32_t essential,
                            int32_t degree,
                            uint32_t threads,
                            struct PcolReport **out);

// 1 if the coloring is perfect, 0 otherwise or when `r` is null.
//
// # Safety
// `r` must be null or a live handle.
int32_t pcol_report_perfect(const struct PcolReport *r);

// Copy the k-by-k quotient matrix, row-major, into `buf` of `cap` entries
// and write k to `k_out`. Fails with `InvalidArgument` if the coloring is not
// perfect and `BufferTooSmall` (after setting `k_out`) if `cap < k*k`.
//
// # Safety
// `r` must be a live handle; `buf` writable for `cap` entries; `k_out` writable.
enum PcolStatus pcol_report_quotient(const struct PcolReport *r,
                                     uint64_t *buf,
                                     uintptr_t cap,
                                     uintptr_t *k_out);

// The report as JSON. Owned by the report and valid until it is freed.
//
// # Safety
// `r` must be null or a live handle.
const char *pcol_report_json(const struct PcolReport *r);

// Release a report. Null is ignored.
//
// # Safety
// `r` must be null or a handle not yet freed.
void pcol_report_free(struct PcolReport *r);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* PCOL_H */
