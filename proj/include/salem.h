/* C interface to the salem core: opaque handles, integer status codes.
 * Status codes match the CLI exit codes. */
#ifndef SALEM_H
#define SALEM_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

#define SALEM_OK 0
#define SALEM_ERR 1
#define SALEM_ERR_CONFIG 2
#define SALEM_ERR_INFEASIBLE 3
#define SALEM_ERR_INVARIANT 4
#define SALEM_ERR_ATTEMPT_CAP 5

typedef struct salem_schedule salem_schedule;
typedef struct salem_tree salem_tree;

/* Message for the most recent failing call on this thread. */
const char* salem_last_error(void);

/* Strings returned through char** outputs are owned by the caller. */
void salem_string_free(char* s);

/* variant: "thm2" | "thm3" | "thm1" | "thm1-second-part"
 * phi: descriptor like "log:1" (ignored for dyadic variants, may be NULL) */
int salem_schedule_create(const char* variant, double alpha, double beta, const char* phi,
                          int levels, salem_schedule** out);
int salem_schedule_from_json(const char* json, salem_schedule** out);
int salem_schedule_to_json(const salem_schedule* s, char** json_out);
void salem_schedule_free(salem_schedule* s);
int salem_schedule_start_level(const salem_schedule* s);
int salem_schedule_band_start(const salem_schedule* s);
uint64_t salem_schedule_hash(const salem_schedule* s);

int salem_tree_build(const salem_schedule* s, uint64_t seed, int depth, int attempt_cap,
                     salem_tree** out);
int salem_tree_from_json(const char* json, salem_tree** out);
int salem_tree_to_json(const salem_tree* t, char** json_out);
void salem_tree_free(salem_tree* t);
int salem_tree_depth(const salem_tree* t);
uint64_t salem_tree_hash(const salem_tree* t);
/* Recomputes every structural invariant and verification record. */
int salem_tree_verify(const salem_tree* t);

/* Writers append the meta_json string verbatim into the artifact header.
 * CSV artifacts start with '#' header lines; JSON summaries are returned. */
int salem_decay_csv(const salem_tree* t, int level, uint64_t kmax, const char* meta_json,
                    const char* path, char** summary_json_out);
int salem_regularity_csv(const salem_tree* t, int depth, int samples_per_scale,
                         const char* meta_json, const char* path, char** summary_json_out);
int salem_energy_json(const salem_tree* t, int l, int n, int r, char** json_out);
int salem_sharpness_csv(const salem_tree* t, double q, int r, int l_max,
                        const char* meta_json, const char* path, char** summary_json_out);
int salem_drift_csv(double alpha, uint64_t l_max, const char* meta_json, const char* path,
                    char** summary_json_out);

#ifdef __cplusplus
}
#endif

#endif
