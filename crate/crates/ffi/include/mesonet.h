#ifndef MESONET_H
#define MESONET_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit by hand. */

#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>

// Quantity selector for [`mesonet_fit_exponent`].
typedef enum MesonetQuantity {
  MESONET_QUANTITY_DEGREE = 0,
  MESONET_QUANTITY_STRENGTH = 1,
  MESONET_QUANTITY_EDGE_WEIGHT = 2,
} MesonetQuantity;

// Result code of every fallible call.
typedef enum MesonetStatus {
  MESONET_STATUS_OK = 0,
  MESONET_STATUS_NULL_ARGUMENT = 1,
  MESONET_STATUS_INVALID_PARAMS = 2,
  // Self-loop, unknown node or bad edge weight.
  MESONET_STATUS_INVALID_GRAPH = 3,
  // Not enough nodes, edges or samples for the requested analysis.
  MESONET_STATUS_INSUFFICIENT_DATA = 4,
  MESONET_STATUS_IO = 5,
  // Malformed input file or JSON.
  MESONET_STATUS_FORMAT = 6,
  // The caller's buffer is too small; the required length was written.
  MESONET_STATUS_BUFFER_TOO_SMALL = 7,
  MESONET_STATUS_PANIC = 8,
} MesonetStatus;

// Labeled, weighted, undirected graph.
typedef struct MesonetGraph MesonetGraph;

// Growth-model parameters.
typedef struct MesonetParams MesonetParams;

// Shell index of every node of a graph.
typedef struct MesonetShells MesonetShells;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Message of the last failed call on this thread, or null. The pointer
// stays valid until the next `mesonet_*` call on the same thread.
const char *mesonet_last_error_message(void);

// Static, NUL-terminated name of a status code.
const char *mesonet_status_name(enum MesonetStatus status);

// Library version as a static string.
const char *mesonet_version(void);

// Default parameters for model A (`weighted == false`) or model B.
struct MesonetParams *mesonet_params_new(bool weighted);

// Parses a JSON parameter document; missing fields take their defaults.
//
// # Safety
// `json` must be a NUL-terminated string and `out` a writable pointer.
enum MesonetStatus mesonet_params_from_json(const char *json, struct MesonetParams **out_params);

// Sets one numeric parameter by name: `c`, `n0`, `p`, `m`, `f`, `q`, `r`,
// `w0`, `delta`, `steps`, `nodes` (final node count) or `seed`. Integer
// parameters reject fractional or negative values.
//
// # Safety
// `params` must come from this library; `name` must be NUL-terminated.
enum MesonetStatus mesonet_params_set(struct MesonetParams *params, const char *name, double value);

// # Safety
// `params` must come from this library (or be null) and not be used afterwards.
void mesonet_params_free(struct MesonetParams *params);

// Runs the growth model.
//
// # Safety
// `params` must come from this library and `out_graph` be writable.
enum MesonetStatus mesonet_generate(const struct MesonetParams *params,
                                    struct MesonetGraph **out_graph);

struct MesonetGraph *mesonet_graph_new(void);

// Appends a node and writes its id.
//
// # Safety
// `graph` must come from this library; `out_id` may be null.
enum MesonetStatus mesonet_graph_add_node(struct MesonetGraph *graph,
                                          uint32_t community,
                                          bool is_core,
                                          uint32_t *out_id);

// Adds weight `w` to the edge `u-v`, creating it if needed.
//
// # Safety
// `graph` must come from this library.
enum MesonetStatus mesonet_graph_add_edge(struct MesonetGraph *graph,
                                          uint32_t u,
                                          uint32_t v,
                                          double w);

// Reads an edge list and, when `labels_path` is not null, its JSON label
// sidecar.
//
// # Safety
// Paths must be NUL-terminated; `out_graph` must be writable.
enum MesonetStatus mesonet_graph_read(const char *edges_path,
                                      const char *labels_path,
                                      struct MesonetGraph **out_graph);

// Writes the graph as a `u<TAB>v<TAB>w` edge list, replacing the file
// atomically.
//
// # Safety
// `graph` must come from this library and `path` be NUL-terminated.
enum MesonetStatus mesonet_graph_write_edges(const struct MesonetGraph *graph, const char *path);

// Node count; 0 for a null graph.
//
// # Safety
// `graph` must come from this library or be null.
uintptr_t mesonet_graph_node_count(const struct MesonetGraph *graph);

// Edge count; 0 for a null graph.
//
// # Safety
// `graph` must come from this library or be null.
uintptr_t mesonet_graph_edge_count(const struct MesonetGraph *graph);

// # Safety
// `graph` must come from this library and `out_degree` be writable.
enum MesonetStatus mesonet_graph_degree(const struct MesonetGraph *graph,
                                        uint32_t node,
                                        uintptr_t *out_degree);

// # Safety
// `graph` must come from this library and `out_strength` be writable.
enum MesonetStatus mesonet_graph_strength(const struct MesonetGraph *graph,
                                          uint32_t node,
                                          double *out_strength);

// # Safety
// `graph` must come from this library and `out_is_core` be writable.
enum MesonetStatus mesonet_graph_is_core(const struct MesonetGraph *graph,
                                         uint32_t node,
                                         bool *out_is_core);

// Copies every edge (`u < v`) into the three caller-provided arrays of
// length `capacity` and writes the edge count to `out_len`. When
// `capacity` is too small nothing is copied, `out_len` still receives the
// required length, and `MESONET_STATUS_BUFFER_TOO_SMALL` is returned.
//
// # Safety
// Each non-null array must have room for `capacity` elements.
enum MesonetStatus mesonet_graph_edges(const struct MesonetGraph *graph,
                                       uint32_t *us,
                                       uint32_t *vs,
                                       double *ws,
                                       uintptr_t capacity,
                                       uintptr_t *out_len);

// # Safety
// `graph` must come from this library (or be null) and not be used afterwards.
void mesonet_graph_free(struct MesonetGraph *graph);

// K-shell decomposition, or S-shell when `weighted` is true.
//
// # Safety
// `graph` must come from this library and `out_shells` be writable.
enum MesonetStatus mesonet_decompose(const struct MesonetGraph *graph,
                                     bool weighted,
                                     struct MesonetShells **out_shells);

// Number of nodes covered; 0 for null.
//
// # Safety
// `shells` must come from this library or be null.
uintptr_t mesonet_shells_len(const struct MesonetShells *shells);

// Highest shell index; 0 for null or empty.
//
// # Safety
// `shells` must come from this library or be null.
uint32_t mesonet_shells_max(const struct MesonetShells *shells);

// # Safety
// `shells` must come from this library and `out_shell` be writable.
enum MesonetStatus mesonet_shells_get(const struct MesonetShells *shells,
                                      uint32_t node,
                                      uint32_t *out_shell);

// # Safety
// `shells` must come from this library (or be null) and not be used afterwards.
void mesonet_shells_free(struct MesonetShells *shells);

// Core-detection score: whole shells are taken from the innermost outward
// until they hold `fraction` of the nodes, then compared with the nodes
// labeled core. Any of the output pointers may be null.
//
// # Safety
// `graph` must come from this library; non-null outputs must be writable.
enum MesonetStatus mesonet_core_efficiency(const struct MesonetGraph *graph,
                                           bool weighted,
                                           double fraction,
                                           double *out_efficiency_pct,
                                           uintptr_t *out_detected,
                                           uintptr_t *out_marked);

// Maximum-likelihood power-law exponent of a degree, strength or edge
// weight distribution over values at or above `x_min`.
//
// # Safety
// `graph` must come from this library and `out_gamma` be writable.
enum MesonetStatus mesonet_fit_exponent(const struct MesonetGraph *graph,
                                        enum MesonetQuantity quantity,
                                        double x_min,
                                        double *out_gamma);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* MESONET_H */
