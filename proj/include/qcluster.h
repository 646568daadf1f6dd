#ifndef QCLUSTER_H
#define QCLUSTER_H

/* C API for the cluster library.  All functions return a status code; any
 * nonzero status means the call itself failed and qcl_last_error() carries a
 * message.  Verification calls that complete but find violations still
 * return QCL_OK: the outcome lives in the JSON report ("pass", "valid",
 * "violations", ...), so callers can distinguish broken inputs from honest
 * negative results.
 *
 * Every char** output parameter receives a NUL-terminated UTF-8 string owned
 * by the caller; release it with qcl_string_free.  Output parameters may be
 * NULL when the caller does not want that artifact.  Handles are opaque and
 * freed with their matching *_free function.  All calls are thread-safe;
 * qcl_last_error is thread-local. */

#include <stddef.h>

#if defined(_WIN32)
#define QCL_API __declspec(dllexport)
#else
#define QCL_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

enum qcl_status {
  QCL_OK = 0,
  QCL_BAD_INPUT = 1,      /* malformed JSON, unknown labels, bad arguments */
  QCL_NOT_DIVISIBLE = 2,  /* exact division failed (Laurent violation) */
  QCL_DIVIDE_BY_ZERO = 3,
  QCL_NO_RETRACTION = 4,  /* no compatible quasi-commutation data exists */
  QCL_UNSUPPORTED = 5,    /* explicitly out-of-scope branch */
  QCL_INTERNAL = 6
};

typedef struct qcl_seed qcl_seed;
typedef struct qcl_acs qcl_acs;

QCL_API const char* qcl_last_error(void);
QCL_API void qcl_string_free(char* s);

/* ---- seeds ------------------------------------------------------------ */

QCL_API int qcl_seed_parse(const char* json, qcl_seed** out);
QCL_API void qcl_seed_free(qcl_seed* seed);
QCL_API int qcl_seed_to_json(const qcl_seed* seed, char** out);

/* Report: {"valid": bool, "violations": [{"rule","detail"}...]}. */
QCL_API int qcl_seed_validate(const qcl_seed* seed, char** report);

/* Mutate at the exchangeable label `direction`.  Report: {"seed": ...,
 * "direction", "fresh"}; with trace != 0 it also carries the tropical maps
 * ("f_plus", ..., "ei_minus") as {domain, codomain, matrix} records. */
QCL_API int qcl_seed_mutate(const qcl_seed* seed, const char* direction,
                            int trace, char** report);

/* Random compatible seed (deterministic in rng_seed).  quantum != 0 attaches
 * quasi-commutation data (and implies frozen rows). */
QCL_API int qcl_seed_random(unsigned long long rng_seed, size_t mutable_rank,
                            size_t extra_frozen, int max_entry, int quantum,
                            qcl_seed** out);

/* ---- exploration and verification -------------------------------------- */

/* options_json (all fields optional): {"depth": N, "fold": bool,
 * "jobs": N, "max_nodes": N}.  report: {"nodes", "edges", "closed",
 * "complete", "folded", "graph", "failures"}; dot receives Graphviz text and
 * vars_json the deduplicated cluster variables, when non-NULL. */
QCL_API int qcl_explore(const qcl_seed* seed, const char* options_json,
                        char** report, char** dot, char** vars_json);

/* suite: "laurent" | "involution" | "signs" | "compat".
 * options_json (optional fields): {"depth": N, "rand": N, "rng_seed": N,
 * "rank": N, "max_entry": N, "quantum": bool, "jobs": N}.  The suite runs on
 * `seed` when non-NULL, plus `rand` random seeds.  Report: {"suite", "pass",
 * "runs": [{"seed","pass","details"}...]}. */
QCL_API int qcl_verify(const qcl_seed* seed, const char* suite,
                       const char* options_json, char** report);

/* ---- abstract cluster structures ---------------------------------------- */

QCL_API int qcl_acs_from_seed(const qcl_seed* seed, size_t depth,
                              qcl_acs** out);
QCL_API void qcl_acs_free(qcl_acs* acs);
QCL_API int qcl_acs_parse(const char* json, qcl_acs** out);
QCL_API int qcl_acs_to_json(const qcl_acs* acs, char** out);

/* Axiom suite + classification.  Report: {"pass", "violations",
 * "classification": {"total","mutable","frozen_rank","connected",...}}. */
QCL_API int qcl_acs_check(const qcl_acs* acs, char** report);

QCL_API int qcl_acs_principal(const qcl_acs* acs, qcl_acs** out);

/* Reconstruct seed data at a vertex ("()" for the root). */
QCL_API int qcl_acs_to_seed(const qcl_acs* acs, const char* vertex_id,
                            char** seed_json);

/* ---- the category of abstract cluster structures ------------------------ */

/* morphism_json embeds its endpoints: {"src": <acs>, "dst": <acs>,
 * "quantum": bool, "f_obj", "f_edge", "chi", "alpha"}.  Report: {"pass",
 * "violations", "notes", "isomorphism": bool}. */
QCL_API int qcl_cat_check_morphism(const char* morphism_json, char** report);

/* Product / coproduct of two ACS documents, with projections/injections
 * verified and mediator construction exercised against the identity cone.
 * Report: {"object": <acs>, "legs": [...], "pass"}. */
QCL_API int qcl_cat_product(const char* a_json, const char* b_json,
                            char** report);
QCL_API int qcl_cat_coproduct(const char* a_json, const char* b_json,
                              char** report);

/* ---- polygon surfaces ---------------------------------------------------- */

/* Report: {"n", "count", "triangulations": ["T{1,3}{1,4}...", ...]}. */
QCL_API int qcl_surface_enumerate(int n, char** report);

QCL_API int qcl_surface_acs(int n, qcl_acs** out);

/* Verify the hexagon <-> Gr(2,6) isomorphism of abstract cluster
 * structures.  Report: {"pass", "vertices", "edges", "violations"}. */
QCL_API int qcl_surface_hexagon_gr26(char** report);

/* ---- rooted cluster morphisms -------------------------------------------- */

/* phi_json: {"source": <seed>, "target": <seed>, "phi": {label: label|null},
 * "specialize": {label: int}}.  sequence_csv: comma-separated directions,
 * innermost first ("" = empty sequence).  Report: {"f_seq", "phi_pushed"}. */
QCL_API int qcl_rcm_push(const char* phi_json, const char* sequence_csv,
                         char** report);

/* Report: {"verdict": "positive"|"negative"|"mixed", "components"}. */
QCL_API int qcl_rcm_sign(const char* phi_json, char** report);

/* Build the induced ACS morphism on depth-truncations and verify it.
 * Report: {"pass", "violations", "morphism"}.  Fails with QCL_UNSUPPORTED
 * for consistently negative maps and QCL_BAD_INPUT for mixed ones. */
QCL_API int qcl_rcm_induce(const char* phi_json, size_t depth, char** report);

/* Check the variable-level mutation condition by substitution.
 * Report: {"pass", "checked", "failures": [{"path","label","detail"}...]}. */
QCL_API int qcl_rcm_verify_vars(const char* phi_json, size_t depth,
                                char** report);

#ifdef __cplusplus
}
#endif

#endif /* QCLUSTER_H */
