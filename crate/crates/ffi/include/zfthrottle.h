#ifndef ZFTHROTTLE_H
#define ZFTHROTTLE_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum ZftFlavor {
  ZFT_FLAVOR_PSD = 0,
  ZFT_FLAVOR_PSD_FLOOR = 1,
} ZftFlavor;

typedef enum ZftRule {
  ZFT_RULE_Z = 0,
  ZFT_RULE_Z_FLOOR = 1,
  ZFT_RULE_Z_PLUS = 2,
  ZFT_RULE_Z_PLUS_FLOOR = 3,
} ZftRule;

typedef enum ZftStatus {
  ZFT_STATUS_OK = 0,
  ZFT_STATUS_NULL_POINTER = 1,
  ZFT_STATUS_INVALID_UTF8 = 2,
  ZFT_STATUS_PARSE = 3,
  ZFT_STATUS_INVALID_EDGE = 4,
  ZFT_STATUS_CAPACITY = 5,
  ZFT_STATUS_DOMAIN = 6,
  ZFT_STATUS_USAGE = 7,
  ZFT_STATUS_SCRIPT = 8,
  ZFT_STATUS_INTERNAL = 9,
  ZFT_STATUS_IO = 10,
  ZFT_STATUS_PANIC = 11,
} ZftStatus;

typedef enum ZftThPlusClass {
  ZFT_TH_PLUS_CLASS_EQUALS_N = 0,
  ZFT_TH_PLUS_CLASS_EQUALS_N_MINUS1 = 1,
  ZFT_TH_PLUS_CLASS_BELOW = 2,
} ZftThPlusClass;

/**
 * Opaque graph handle.
 */
typedef struct ZftGraph ZftGraph;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the last failed call on this thread, or null after a
 * success. Valid until the next call into the library on the same thread.
 */
const char *zft_last_error_message(void);

/**
 * # Safety
 * `s` must be null or a string returned by this library, freed once.
 */
void zft_string_free(char *s);

/**
 * Parses a graph6 string into a new handle.
 *
 * # Safety
 * `text` must be a nul-terminated string and `out` a writable pointer.
 */
enum ZftStatus zft_graph_from_graph6(const char *text, struct ZftGraph **out);

/**
 * Builds a graph from `edge_count` pairs stored flat in `endpoints`.
 *
 * # Safety
 * `endpoints` must hold `2 * edge_count` values (it may be null when
 * `edge_count` is 0) and `out` must be writable.
 */
enum ZftStatus zft_graph_from_edges(size_t n,
                                    const size_t *endpoints,
                                    size_t edge_count,
                                    struct ZftGraph **out);

/**
 * # Safety
 * `g` must be null or a handle from this library, freed once.
 */
void zft_graph_free(struct ZftGraph *g);

/**
 * Number of vertices, or 0 for a null handle.
 *
 * # Safety
 * `g` must be null or a live handle.
 */
size_t zft_graph_order(const struct ZftGraph *g);

/**
 * # Safety
 * `g` must be null or a live handle.
 */
size_t zft_graph_edge_count(const struct ZftGraph *g);

/**
 * # Safety
 * `g` must be a live handle and `out` writable.
 */
enum ZftStatus zft_graph_to_graph6(const struct ZftGraph *g, char **out);

/**
 * Throttling number with an optimal initial set (as a bitmask) and its
 * propagation time. Any of the output pointers may be null.
 *
 * # Safety
 * `g` must be a live handle; non-null outputs must be writable.
 */
enum ZftStatus zft_throttling_number(const struct ZftGraph *g,
                                     enum ZftRule rule,
                                     size_t *th,
                                     uint32_t *initial,
                                     size_t *pt);

/**
 * The full throttling certificate as JSON.
 *
 * # Safety
 * `g` must be a live handle and `out` writable.
 */
enum ZftStatus zft_throttling_certificate_json(const struct ZftGraph *g,
                                               enum ZftRule rule,
                                               char **out);

/**
 * Propagation time of `initial`. `*forces_all` is set to false (and `*pt`
 * left untouched) when the set does not color the whole graph.
 *
 * # Safety
 * `g` must be a live handle; `pt` and `forces_all` must be writable.
 */
enum ZftStatus zft_propagation_time(const struct ZftGraph *g,
                                    enum ZftRule rule,
                                    uint32_t initial,
                                    size_t *pt,
                                    bool *forces_all);

/**
 * Whether a connected graph has `th = n`.
 *
 * # Safety
 * `g` must be a live handle and `out` writable.
 */
enum ZftStatus zft_classify_th_eq_n(const struct ZftGraph *g, bool *out);

/**
 * Where `th+` sits relative to `n` for a connected graph.
 *
 * # Safety
 * `g` must be a live handle and `out` writable.
 */
enum ZftStatus zft_classify_thplus(const struct ZftGraph *g, enum ZftThPlusClass *out);

/**
 * Whether `g` contains an induced member of the forbidden family for `k`
 * (`-1 <= k <= 2`).
 *
 * # Safety
 * `g` must be a live handle and `out` writable.
 */
enum ZftStatus zft_contains_forbidden_member(const struct ZftGraph *g, int64_t k, bool *out);

/**
 * Contraction/deletion script certifying throttling at most `t`, as JSON,
 * or the string `null` when none exists.
 *
 * # Safety
 * `g` must be a live handle and `out` writable.
 */
enum ZftStatus zft_characterization_certificate_json(const struct ZftGraph *g,
                                                     size_t t,
                                                     enum ZftFlavor flavor,
                                                     char **out);

/**
 * Largest adjacency eigenvalue.
 *
 * # Safety
 * `g` must be a live handle and `out` writable.
 */
enum ZftStatus zft_spectral_radius(const struct ZftGraph *g, double *out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* ZFTHROTTLE_H */
