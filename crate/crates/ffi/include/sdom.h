#ifndef SDOM_H
#define SDOM_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

#define SDOM_VARIANT_PLAIN 0

#define SDOM_VARIANT_ROMAN 1

#define SDOM_VARIANT_DOUBLE_ROMAN 2

#define SDOM_MODE_ROMAN 0

#define SDOM_MODE_DOUBLE_ROMAN 1

typedef enum SdomStatus {
  SDOM_STATUS_OK = 0,
  SDOM_STATUS_INVALID_ARGUMENT = 1,
  SDOM_STATUS_NULL_POINTER = 2,
  SDOM_STATUS_CAPACITY = 3,
  SDOM_STATUS_OVERFLOW = 4,
  SDOM_STATUS_BUDGET = 5,
  SDOM_STATUS_BUFFER_TOO_SMALL = 6,
  SDOM_STATUS_INTERNAL = 7,
} SdomStatus;

/**
 * Opaque sparse labeling.
 */
typedef struct SdomLabeling SdomLabeling;

/**
 * Opaque sorted vertex set.
 */
typedef struct SdomVertexSet SdomVertexSet;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the last failed call on this thread, or null. Valid until the
 * next failing call on the same thread; do not free.
 */
const char *sdom_last_error(void);

/**
 * Releases a string returned by this library. Null is ignored.
 *
 * # Safety
 * `s` must be null or a pointer obtained from this library, freed once.
 */
void sdom_string_free(char *s);

/**
 * Number of vertices `n^t`.
 *
 * # Safety
 * `out` must point to writable storage.
 */
enum SdomStatus sdom_vertex_count(uint32_t n, uint32_t t, uint64_t *out);

/**
 * Adjacency of two words of length `t`.
 *
 * # Safety
 * `u` and `v` must point to `t` labels each; `out` must be writable.
 */
enum SdomStatus sdom_are_adjacent(uint32_t n,
                                  uint32_t t,
                                  const uint32_t *u,
                                  const uint32_t *v,
                                  bool *out);

/**
 * Closed-form gamma, gamma_R or gamma_dR. `Overflow` if it exceeds `u64`.
 *
 * # Safety
 * `out` must point to writable storage.
 */
enum SdomStatus sdom_formula(uint32_t n, uint32_t t, uint32_t which, uint64_t *out);

/**
 * Exact optimum by branch and bound (single-threaded, default solver cap).
 *
 * # Safety
 * `out` must point to writable storage.
 */
enum SdomStatus sdom_exact(uint32_t n,
                           uint32_t t,
                           uint32_t which,
                           bool restrict_values,
                           uint64_t *out);

/**
 * Builds `D_{n,t}`, or `D*_{n,t}` when `star` is true.
 *
 * # Safety
 * `out` must point to writable storage.
 */
enum SdomStatus sdom_build_d(uint32_t n, uint32_t t, bool star, struct SdomVertexSet **out);

/**
 * # Safety
 * `set` must be a live handle; `out` must be writable.
 */
enum SdomStatus sdom_vertex_set_len(const struct SdomVertexSet *set, size_t *out);

/**
 * Copies member `index` (lexicographic order) into `buf`, which must hold at
 * least `t` labels.
 *
 * # Safety
 * `set` must be a live handle; `buf` must hold `buf_len` writable `u32`s.
 */
enum SdomStatus sdom_vertex_set_word(const struct SdomVertexSet *set,
                                     size_t index,
                                     uint32_t *buf,
                                     size_t buf_len);

/**
 * Membership test for a word of length `t`.
 *
 * # Safety
 * `set` must be a live handle; `word` must point to `t` labels.
 */
enum SdomStatus sdom_vertex_set_contains(const struct SdomVertexSet *set,
                                         const uint32_t *word,
                                         bool *out);

/**
 * Whether the set dominates the whole graph.
 *
 * # Safety
 * `set` must be a live handle; `out` must be writable.
 */
enum SdomStatus sdom_vertex_set_is_dominating(const struct SdomVertexSet *set, bool *out);

/**
 * JSON document for the set; free with `sdom_string_free`.
 *
 * # Safety
 * `set` must be a live handle; `out` must be writable.
 */
enum SdomStatus sdom_vertex_set_to_json(const struct SdomVertexSet *set, char **out);

/**
 * # Safety
 * `set` must be null or a live handle, freed once.
 */
void sdom_vertex_set_free(struct SdomVertexSet *set);

/**
 * Roman or double Roman labeling derived from `D_{n,t}`.
 *
 * # Safety
 * `out` must point to writable storage.
 */
enum SdomStatus sdom_labeling_from_d(uint32_t n,
                                     uint32_t t,
                                     uint32_t mode,
                                     struct SdomLabeling **out);

/**
 * # Safety
 * `f` must be a live handle; `out` must be writable.
 */
enum SdomStatus sdom_labeling_weight(const struct SdomLabeling *f, uint64_t *out);

/**
 * Value assigned to a word of length `t` (0 when unlisted).
 *
 * # Safety
 * `f` must be a live handle; `word` must point to `t` labels.
 */
enum SdomStatus sdom_labeling_get(const struct SdomLabeling *f, const uint32_t *word, uint8_t *out);

/**
 * Validity under the labeling's own mode.
 *
 * # Safety
 * `f` must be a live handle; `out` must be writable.
 */
enum SdomStatus sdom_labeling_is_valid(const struct SdomLabeling *f, bool *out);

/**
 * JSON document for the labeling; free with `sdom_string_free`.
 *
 * # Safety
 * `f` must be a live handle; `out` must be writable.
 */
enum SdomStatus sdom_labeling_to_json(const struct SdomLabeling *f, char **out);

/**
 * # Safety
 * `f` must be null or a live handle, freed once.
 */
void sdom_labeling_free(struct SdomLabeling *f);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* SDOM_H */
