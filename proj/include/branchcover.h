#ifndef BRANCHCOVER_H
#define BRANCHCOVER_H

/*
 * C interface to the branched-cover classification engine.
 *
 * All functions returning int use the shared status codes below; on any
 * nonzero return the thread-local message from bc_last_error() describes the
 * failure.  Strings returned through char** are heap-allocated and must be
 * released with bc_string_free().
 */

#ifdef __cplusplus
extern "C" {
#endif

#define BC_OK 0
#define BC_ERR_INVALID_INPUT 2
#define BC_ERR_RESOURCE_LIMIT 3
#define BC_ERR_INTERNAL 4

/* A built family instance: group, character table, automorphism generators. */
typedef struct bc_instance bc_instance;

/* Engine version string; static storage, do not free. */
const char* bc_version(void);

/* Message of the last failure on this thread; empty string after success.
 * Static storage, do not free. */
const char* bc_last_error(void);

/* Builds an instance from a family spec such as "metacyclic:q=7,n=3",
 * "dicyclic:q=5", "quaternion8" or "cyclic:n=9". */
int bc_instance_new(const char* spec, bc_instance** out);
void bc_instance_free(bc_instance* handle);

/* Basic facts; return 0 on a null handle. */
long long bc_instance_order(const bc_instance* handle);
long long bc_instance_conjugacy_classes(const bc_instance* handle);

/* Group and character-table summary. */
int bc_instance_info_json(const bc_instance* handle, char** out_json);

/* All Hurwitz classes with genus, specialness invariant and CM status. */
int bc_instance_classify_json(bc_instance* handle, char** out_json);

/* CM reports.  ssg_literal selects one class by any member datum, e.g.
 * "a,b,b^3*a^-1"; NULL reports every class. */
int bc_instance_cm_json(bc_instance* handle, const char* ssg_literal,
                        char** out_json);

/* Batch scan: appends one JSONL record per (instance, class) to store_path,
 * skipping keys already present.  family is "metacyclic" (uses n_max) or
 * "dicyclic" (n_max ignored).  Returns an aggregate summary. */
int bc_scan(const char* family, unsigned long q_max, unsigned long n_max,
            const char* store_path, char** out_summary_json);

/* Overrides the group-order bound (default 256, or the BRANCHCOVER_MAX_ORDER
 * environment variable); bound 0 restores that default resolution. */
int bc_set_max_group_order(unsigned bound);

void bc_string_free(char* text);

#ifdef __cplusplus
}
#endif

#endif /* BRANCHCOVER_H */
