#ifndef CLUSTER_SCATTER_H
#define CLUSTER_SCATTER_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum CsStatus {
  CS_STATUS_OK = 0,
  /**
   * Null pointer, invalid UTF-8 or a zero budget.
   */
  CS_STATUS_INVALID_ARGUMENT = 1,
  /**
   * Unparseable or ill-formed JSON document.
   */
  CS_STATUS_INVALID_INPUT = 2,
  CS_STATUS_NOT_SKEW_SYMMETRIZABLE = 3,
  CS_STATUS_BAD_DECOMPOSITION = 4,
  /**
   * Enumeration stopped early; the partial graph is still returned.
   */
  CS_STATUS_BUDGET_EXCEEDED = 5,
  CS_STATUS_CYCLE_FOUND = 6,
  CS_STATUS_ROOT_NOT_SOURCE = 7,
  CS_STATUS_SIGN_INCOHERENT = 8,
  CS_STATUS_INCONSISTENT = 9,
  CS_STATUS_NOT_ALL_GREEN = 10,
  CS_STATUS_NOT_RANK_TWO = 11,
  CS_STATUS_DEFECT_NOT_PARALLEL = 12,
  /**
   * Truncation level outside the supported range, or another algebra
   * error.
   */
  CS_STATUS_ALGEBRA_ERROR = 13,
  /**
   * A panic was caught at the boundary.
   */
  CS_STATUS_INTERNAL = 99,
} CsStatus;

/**
 * A truncated scattering diagram with its structure algebra.
 */
typedef struct CsDiagram CsDiagram;

/**
 * Validated `B`, `Δ`, `Ω` and skew-symmetrizer.
 */
typedef struct CsFixedData CsFixedData;

/**
 * An oriented exchange graph together with the data it was built from.
 */
typedef struct CsGraph CsGraph;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Library version, a static NUL-terminated string.
 */
const char *cs_version(void);

/**
 * Message for the last failed call on this thread, or NULL. Valid until
 * the next call into the library from this thread.
 */
const char *cs_last_error_message(void);

/**
 * # Safety
 * `s` must be NULL or a string returned by this library, not yet freed.
 */
void cs_string_free(char *s);

/**
 * Parses `{"B": [[...]], "delta": [...], "D": [...]}` (`D` optional).
 *
 * # Safety
 * `json` must be a NUL-terminated string; `out` must be writable.
 */
enum CsStatus cs_fixed_data_from_json(const char *json, struct CsFixedData **out);

/**
 * # Safety
 * `fd` must be NULL or a handle from [`cs_fixed_data_from_json`].
 */
void cs_fixed_data_free(struct CsFixedData *fd);

/**
 * Rank of the data, 0 for a NULL handle.
 *
 * # Safety
 * `fd` must be NULL or a live handle.
 */
size_t cs_fixed_data_rank(const struct CsFixedData *fd);

/**
 * Breadth-first enumeration. On `CS_STATUS_BUDGET_EXCEEDED` the partial
 * graph is still stored in `out` and must be freed.
 *
 * # Safety
 * `fd` must be a live handle; `out` must be writable.
 */
enum CsStatus cs_enumerate_graph(const struct CsFixedData *fd,
                                 size_t max_vertices,
                                 size_t max_depth,
                                 struct CsGraph **out);

/**
 * # Safety
 * `g` must be NULL or a handle from [`cs_enumerate_graph`].
 */
void cs_graph_free(struct CsGraph *g);

/**
 * # Safety
 * `g` must be NULL or a live handle.
 */
size_t cs_graph_vertex_count(const struct CsGraph *g);

/**
 * # Safety
 * `g` must be NULL or a live handle.
 */
size_t cs_graph_edge_count(const struct CsGraph *g);

/**
 * # Safety
 * `g` must be NULL or a live handle.
 */
bool cs_graph_is_complete(const struct CsGraph *g);

/**
 * Graph JSON, with the topological order when the graph is acyclic.
 *
 * # Safety
 * `g` must be a live handle; `out` must be writable.
 */
enum CsStatus cs_graph_to_json(const struct CsGraph *g, char **out);

/**
 * # Safety
 * `g` must be a live handle; `out` must be writable.
 */
enum CsStatus cs_graph_to_dot(const struct CsGraph *g, char **out);

/**
 * Writes a topological order (vertex indices, root first) into `order`,
 * which must hold `capacity` entries; `len` receives the vertex count. If
 * `capacity` is too small nothing is written and `CS_STATUS_INVALID_ARGUMENT`
 * is returned with `len` set.
 *
 * # Safety
 * `g` must be a live handle; `order` must point to `capacity` writable
 * entries (or be NULL when `capacity` is 0); `len` must be writable.
 */
enum CsStatus cs_certify_acyclic(const struct CsGraph *g,
                                 size_t *order,
                                 size_t capacity,
                                 size_t *len);

/**
 * Path-ordered products around a cycle basis of the graph, checked in
 * `G^{≤level}`. `loops` receives the number of loops verified.
 *
 * # Safety
 * `g` must be a live handle; `loops` must be NULL or writable.
 */
enum CsStatus cs_verify_loop_consistency(const struct CsGraph *g, uint32_t level, size_t *loops);

/**
 * Consistent completion of a rank-2 diagram up to `level`, re-verified
 * before returning.
 *
 * # Safety
 * `fd` must be a live handle; `out` must be writable.
 */
enum CsStatus cs_complete_rank2(const struct CsFixedData *fd,
                                uint32_t level,
                                struct CsDiagram **out);

/**
 * # Safety
 * `d` must be NULL or a handle from [`cs_complete_rank2`].
 */
void cs_diagram_free(struct CsDiagram *d);

/**
 * Number of walls, including the initial ones.
 *
 * # Safety
 * `d` must be NULL or a live handle.
 */
size_t cs_diagram_wall_count(const struct CsDiagram *d);

/**
 * # Safety
 * `d` must be a live handle; `out` must be writable.
 */
enum CsStatus cs_diagram_to_json(const struct CsDiagram *d, char **out);

/**
 * Recomputes the loop product around the origin; `CS_STATUS_INCONSISTENT`
 * if it is not the identity.
 *
 * # Safety
 * `d` must be a live handle.
 */
enum CsStatus cs_diagram_verify(const struct CsDiagram *d);

/**
 * Lowest-degree witness for an all-green crossing sequence given as
 * `{"delta": [...], "crossings": [{"normal": [...], "sign": 1}]}`. The
 * result is `{"level": l, "witness": "..."}`.
 *
 * # Safety
 * `json` must be a NUL-terminated string; `out` must be writable.
 */
enum CsStatus cs_obstruct(const char *json, char **out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* CLUSTER_SCATTER_H */
