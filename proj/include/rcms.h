/* rcms — C interface to the RC-matrix / degree-4 multigraph engine.
 *
 * Usage pattern:
 *   rcms_engine* e = rcms_engine_new();
 *   char* json = NULL;
 *   if (rcms_count(e, 3, 4, &json) == RCMS_OK) { ...; rcms_string_free(json); }
 *   else fprintf(stderr, "%s\n", rcms_engine_last_error(e));
 *   rcms_engine_free(e);
 *
 * Every function returning rcms_status leaves a message retrievable with
 * rcms_engine_last_error on failure. All returned strings are heap copies
 * owned by the caller; release them with rcms_string_free. An engine caches
 * per-order results, so repeated queries against one engine are cheap; it is
 * not safe to share one engine across threads without external locking.
 */
#ifndef RCMS_H
#define RCMS_H

#ifdef __cplusplus
extern "C" {
#endif

typedef struct rcms_engine rcms_engine;

typedef enum rcms_status {
    RCMS_OK = 0,
    RCMS_ERR_INVALID_ARG = 1, /* argument outside the documented domain */
    RCMS_ERR_PARSE = 2,       /* malformed matrix text */
    RCMS_ERR_UNSUPPORTED = 3, /* valid request beyond supported limits */
    RCMS_ERR_CHECKPOINT = 4,  /* unusable checkpoint file */
    RCMS_ERR_INTERNAL = 5     /* broken invariant; indicates a bug */
} rcms_status;

/* Library version string, e.g. "1.0.0". Static storage; do not free. */
const char* rcms_version(void);

rcms_engine* rcms_engine_new(void);
void rcms_engine_free(rcms_engine* engine);

/* Worker threads for enumeration/assembly; values < 1 mean 1. */
rcms_status rcms_engine_set_threads(rcms_engine* engine, int threads);

/* Message from the most recent failed call on this engine. Owned by the
 * engine, valid until the next call on it; never NULL. */
const char* rcms_engine_last_error(const rcms_engine* engine);

void rcms_string_free(char* s);

/* N(m) for margin d plus the class count (class count null past order 6),
 * as a JSON document. Orders 1..8, margins 1..8. */
rcms_status rcms_count(rcms_engine* engine, int m, int d, char** out_json);

/* Class representatives with orbit sizes and weight factors. Orders 1..7,
 * margins 1..5. checkpoint_path (may be NULL) names a stage checkpoint to
 * resume from and write to. as_csv selects CSV instead of JSON. */
rcms_status rcms_enumerate(rcms_engine* engine, int m, int d,
                           const char* checkpoint_path, int as_csv,
                           char** out_text);

/* Merged multigraph records for order m (margin 4): adjacency, both
 * multiplicity normalizations, symmetry factor, connectivity. */
rcms_status rcms_graphs(rcms_engine* engine, int m, int connected_only,
                        int as_csv, char** out_text);

/* Record counts only (total and connected) for order m. */
rcms_status rcms_graphs_count(rcms_engine* engine, int m, int* out_total,
                              int* out_connected);

/* DOT source for graph `index` (1-based, connected records first) at
 * order m. */
rcms_status rcms_graph_dot(rcms_engine* engine, int m, int index,
                           char** out_dot);

/* Convex-decomposition report for the matrices in `text` (format: header
 * line "m d", then m rows of m entries; blank lines separate matrices).
 * Includes pairwise inequivalence verdicts when several are given. */
rcms_status rcms_decompose_text(rcms_engine* engine, const char* text,
                                char** out_json);

/* Same report for class representative `class_index` (1-based, canonical
 * order) at order m, margin d. */
rcms_status rcms_decompose_class(rcms_engine* engine, int m, int d,
                                 int class_index, char** out_json);

/* Replays the reference tables for order m (1..6); with_oracle adds the
 * independent matching oracle (m <= 5). out_all_pass (may be NULL) is set
 * to 1 when every check passed, else 0. */
rcms_status rcms_verify(rcms_engine* engine, int m, int with_oracle,
                        char** out_json, int* out_all_pass);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* RCMS_H */
