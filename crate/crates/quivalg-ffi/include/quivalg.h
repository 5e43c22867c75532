/* C interface for the quivalg graph-algebra library. */

#pragma once

/* Generated with cbindgen:0.26.0 */

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Status code returned by every fallible entry point.
 */
typedef enum QgStatus {
  QG_STATUS_OK = 0,
  QG_STATUS_NULL_ARGUMENT = 1,
  QG_STATUS_INVALID_UTF8 = 2,
  QG_STATUS_PARSE_ERROR = 3,
  QG_STATUS_COMPUTE_ERROR = 4,
} QgStatus;

/**
 * Opaque graph handle.
 */
typedef struct QgGraph QgGraph;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Library version as a static string; do not free.
 */
const char *qg_version(void);

/**
 * Message for the most recent failure on this thread; valid until the
 * next failing call from the same thread. Do not free.
 */
const char *qg_last_error(void);

/**
 * Releases a string returned by this library.
 *
 * # Safety
 * `s` must be a pointer previously returned by a `qg_*` function that
 * documents string ownership, or null.
 */
void qg_string_free(char *s);

/**
 * Parses the JSON document form of a graph into a fresh handle.
 *
 * # Safety
 * `json` must be a NUL-terminated string; `out` must be a valid
 * location for one pointer.
 */
enum QgStatus qg_graph_parse_json(const char *json, struct QgGraph **out);

/**
 * Releases a graph handle.
 *
 * # Safety
 * `g` must come from `qg_graph_parse_json` and not have been freed.
 */
void qg_graph_free(struct QgGraph *g);

/**
 * # Safety
 * `g` must be a live graph handle.
 */
uintptr_t qg_graph_vertex_count(const struct QgGraph *g);

/**
 * # Safety
 * `g` must be a live graph handle.
 */
uintptr_t qg_graph_edge_count(const struct QgGraph *g);

/**
 * DOT rendering of the graph. The caller owns the string.
 *
 * # Safety
 * `g` must be a live graph handle; `out` must hold one pointer.
 */
enum QgStatus qg_graph_to_dot(const struct QgGraph *g, char **out);

/**
 * Number of loop edges at a vertex (the character-ball dimension).
 *
 * # Safety
 * `g` live handle, `vertex` NUL-terminated, `out` valid for one value.
 */
enum QgStatus qg_ball_dimension(const struct QgGraph *g, const char *vertex, uintptr_t *out);

/**
 * Edge count from `from` to `to`, recovered through the radical probe.
 *
 * # Safety
 * `g` live handle; `from`/`to` NUL-terminated; `out` valid.
 */
enum QgStatus qg_edge_count_via_radical(const struct QgGraph *g,
                                        const char *from,
                                        const char *to,
                                        uint64_t seed,
                                        uintptr_t *out);

/**
 * JSON relation report for the truncated representation at `level`.
 * The caller owns the string.
 *
 * # Safety
 * `g` live handle; `out` valid for one pointer.
 */
enum QgStatus qg_relations_json(const struct QgGraph *g, uintptr_t level, char **out);

/**
 * JSON reconstruction result (ball dimensions, pair counts,
 * provenance). The caller owns the string.
 *
 * # Safety
 * `g` live handle; `out` valid for one pointer.
 */
enum QgStatus qg_reconstruct_json(const struct QgGraph *g, uint64_t seed, char **out);

/**
 * Runs the reconstruction round trip with three scrambles; writes 1 for
 * pass, 0 for fail.
 *
 * # Safety
 * `g` live handle; `out_pass` valid for one value.
 */
enum QgStatus qg_verify_roundtrip(const struct QgGraph *g, uint64_t seed, int32_t *out_pass);

#ifdef __cplusplus
} // extern "C"
#endif // __cplusplus
